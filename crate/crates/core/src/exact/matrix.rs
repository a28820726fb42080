//! Square matrices over ℚ and ℚ[c], with determinants by evaluation and
//! interpolation.

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Square matrix with polynomial entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    dim: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(rows: Vec<Vec<Poly>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidSpec("polynomial matrix must be square and nonempty".into()));
        }
        Ok(Self { dim, entries: rows.into_iter().flatten().collect() })
    }

    pub fn identity(dim: usize) -> Self {
        let entries = (0..dim * dim)
            .map(|k| if k / dim == k % dim { Poly::one() } else { Poly::zero() })
            .collect();
        Self { dim, entries }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        assert!(dim > 0);
        let entries = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.dim + j]
    }

    pub fn max_degree(&self) -> usize {
        self.entries.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &Rational) -> Vec<Vec<Rational>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).eval(x)).collect())
            .collect()
    }
}

/// Determinant of a rational matrix by Gaussian elimination with exact pivots.
pub fn det_rational(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            let (top, bottom) = a.split_at_mut(r);
            for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= &f * y;
            }
        }
    }
    det
}

/// Newton-form interpolation through `(xs[i], ys[i])`, expanded to monomials.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Poly {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut out = Poly::zero();
    for i in (0..n).rev() {
        out = &(&out * &Poly::linear_factor(&xs[i])) + &Poly::constant(dd[i].clone());
    }
    out
}

/// Exact determinant in ℚ[c]: evaluate at `dim·maxdeg + 1` integer points
/// and interpolate.
pub fn polymatrix_det(m: &PolyMatrix) -> Poly {
    let npts = m.dim() * m.max_degree() + 1;
    let xs: Vec<Rational> = (0..npts as i64).map(int).collect();
    let ys: Vec<Rational> = xs.iter().map(|x| det_rational(m.eval(x))).collect();
    interpolate(&xs, &ys)
}
