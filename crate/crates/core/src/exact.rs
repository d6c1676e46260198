//! Exact rational linear algebra.
//!
//! Everything here works over `BigRational` (and Gaussian rationals built on
//! top of it). Subspaces are kept in reduced row echelon form so that rank,
//! membership and coordinates are all read off without floating point.

use num::{BigInt, BigRational, Complex, One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;
pub type GaussQ = Complex<Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Exact rational value of a finite `f64`.
///
/// Panics on NaN or infinities; callers validate user input before this.
pub fn q_from_f64(x: f64) -> Q {
    Q::from_float(x).expect("finite float")
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn gq(re: Q, im: Q) -> GaussQ {
    Complex::new(re, im)
}

pub fn gq_int(re: i64, im: i64) -> GaussQ {
    Complex::new(q(re), q(im))
}

pub fn gq_zero() -> GaussQ {
    Complex::new(Q::zero(), Q::zero())
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    let mut acc = Q::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// `sum_i w_i a_i b_i`, the bilinear form with diagonal weights `w`.
pub fn weighted_dot(a: &[Q], b: &[Q], w: &[Q]) -> Q {
    let mut acc = Q::zero();
    for ((x, y), wi) in a.iter().zip(b).zip(w) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y * wi;
        }
    }
    acc
}

/// `a += c * b`
pub fn axpy(a: &mut [Q], c: &Q, b: &[Q]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

pub fn scale(v: &[Q], c: &Q) -> Vec<Q> {
    v.iter().map(|x| x * c).collect()
}

/// Rescales a nonzero vector by a positive factor so that its entries are
/// coprime integers.
pub fn primitive(v: &[Q]) -> Vec<Q> {
    use num::Integer;
    let mut lcm = BigInt::one();
    for x in v.iter().filter(|x| !x.is_zero()) {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in ints.iter().filter(|x| !x.is_zero()) {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    g = g.abs();
    ints.into_iter().map(|x| Q::from_integer(x / &g)).collect()
}

/// A column-compressed sparse rational matrix acting on dense vectors.
#[derive(Clone, Debug)]
pub struct SparseMatrix {
    dim_out: usize,
    dim_in: usize,
    cols: Vec<Vec<(usize, Q)>>,
}

impl SparseMatrix {
    /// Builds the matrix of a linear map by evaluating it on unit vectors.
    pub fn from_fn(dim_in: usize, dim_out: usize, mut f: impl FnMut(usize) -> Vec<Q>) -> Self {
        let cols = (0..dim_in)
            .map(|c| {
                let col = f(c);
                debug_assert_eq!(col.len(), dim_out);
                col.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect();
        Self { dim_out, dim_in, cols }
    }

    pub fn from_dense(rows: &[Vec<Q>]) -> Self {
        let dim_out = rows.len();
        let dim_in = rows.first().map_or(0, Vec::len);
        Self::from_fn(dim_in, dim_out, |c| rows.iter().map(|r| r[c].clone()).collect())
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim_out];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, a) in &self.cols[c] {
                out[*r] += a * x;
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut rows = vec![vec![Q::zero(); self.dim_in]; self.dim_out];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, a) in col {
                rows[*r][c] = a.clone();
            }
        }
        rows
    }
}

/// A subspace of `Q^n` in reduced row echelon form.
///
/// Rows are sorted by pivot column, each pivot entry is 1 and every other row
/// vanishes in that column.
#[derive(Clone, Debug, PartialEq)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Self { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        let mut e = Self::new(dim);
        for i in 0..dim {
            let mut v = vec![Q::zero(); dim];
            v[i] = Q::one();
            e.rows.push(v);
            e.pivots.push(i);
        }
        e
    }

    pub fn from_vectors<'a>(dim: usize, vs: impl IntoIterator<Item = &'a Vec<Q>>) -> Self {
        let mut e = Self::new(dim);
        for v in vs {
            e.insert(v.clone());
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts the projection onto the row space along the pivot columns.
    pub fn reduce(&self, v: &mut [Q]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = -v[p].clone();
            axpy(v, &c, row);
        }
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        is_zero_vec(&w)
    }

    /// Adds `v` to the span. Returns `true` when the rank grew.
    pub fn insert(&mut self, mut v: Vec<Q>) -> bool {
        assert_eq!(v.len(), self.dim, "vector length does not match ambient dimension");
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = -row[p].clone();
                axpy(row, &c, &v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    /// Coordinates of `v` with respect to the echelon rows, if `v` lies in the span.
    pub fn coords(&self, v: &[Q]) -> Option<Vec<Q>> {
        let c: Vec<Q> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut w = v.to_vec();
        for (row, ci) in self.rows.iter().zip(&c) {
            let m = -ci.clone();
            axpy(&mut w, &m, row);
        }
        is_zero_vec(&w).then_some(c)
    }

    pub fn contains_all(&self, other: &Echelon) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Right null space of the matrix whose rows span `self`.
    pub fn null_space(&self) -> Vec<Vec<Q>> {
        let mut is_pivot = vec![false; self.dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.dim)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = vec![Q::zero(); self.dim];
                x[f] = Q::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    x[p] = -row[f].clone();
                }
                x
            })
            .collect()
    }
}

/// Null space of a matrix given by its rows.
pub fn null_space(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r.clone());
    }
    e.null_space()
}

pub fn rank(rows: &[Vec<Q>], ncols: usize) -> usize {
    Echelon::from_vectors(ncols, rows).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = Echelon::new(3);
        assert!(e.insert(v(&[1, 2, 3])));
        assert!(e.insert(v(&[2, 4, 7])));
        assert!(!e.insert(v(&[3, 6, 10])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v(&[0, 0, 1])));
        assert!(!e.contains(&v(&[0, 1, 0])));
        assert_eq!(e.pivots(), &[0, 2]);
    }

    #[test]
    fn coords_reconstruct() {
        let e = Echelon::from_vectors(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let target = v(&[2, 5, 3]);
        let c = e.coords(&target).unwrap();
        let mut rebuilt = vec![Q::zero(); 3];
        for (row, ci) in e.rows().iter().zip(&c) {
            axpy(&mut rebuilt, ci, row);
        }
        assert_eq!(rebuilt, target);
        assert!(e.coords(&v(&[1, 0, 0])).is_none());
    }

    #[test]
    fn null_space_is_annihilated() {
        let rows = vec![v(&[1, 2, 3, 4]), v(&[2, 4, 6, 9])];
        let ns = null_space(&rows, 4);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            for r in &rows {
                assert!(dot(r, x).is_zero());
            }
        }
    }

    #[test]
    fn primitive_form() {
        let p = primitive(&[q_frac(-1, 2), q_frac(1, 3), q(0)]);
        assert_eq!(p, v(&[-3, 2, 0]));
    }

    #[test]
    fn float_conversion_is_exact() {
        let x = 0.6_f64;
        assert_eq!(q_to_f64(&q_from_f64(x)), x);
    }
}
