//! Integer row lattices.
//!
//! [`Echelon`] reduces a list of integer rows to a Hermite-style echelon basis
//! while tracking the unimodular transform, which gives membership, exact
//! rational decomposition, integer solving and the left kernel from a single
//! reduction. [`smith`] diagonalizes relation matrices for presentations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `rows[dst] -= q * rows[src]`
fn row_sub(rows: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() || dst == src {
        return;
    }
    let (d, s) = if dst < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            let mut row = vec![BigInt::zero(); n];
            row[i] = BigInt::one();
            row
        })
        .collect()
}

/// Echelon basis of the row lattice spanned by some integer vectors.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    nrows_input: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    /// `transform[i] · input == rows[i]`
    transform: Vec<Vec<BigInt>>,
    kernel: Vec<Vec<BigInt>>,
}

impl Echelon {
    pub fn new(input: &[Vec<BigInt>], ncols: usize) -> Self {
        let m = input.len();
        let mut a: Vec<Vec<BigInt>> = input.to_vec();
        for row in &a {
            assert_eq!(row.len(), ncols, "row width mismatch");
        }
        let mut u = identity(m);
        let mut r = 0;
        let mut pivots = Vec::new();

        for c in 0..ncols {
            if r == m {
                break;
            }
            loop {
                let best = (r..m)
                    .filter(|&i| !a[i][c].is_zero())
                    .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
                let Some(p) = best else { break };
                a.swap(r, p);
                u.swap(r, p);
                let mut clean = true;
                for i in r + 1..m {
                    if a[i][c].is_zero() {
                        continue;
                    }
                    let q = a[i][c].div_floor(&a[r][c]);
                    row_sub(&mut a, i, r, &q);
                    row_sub(&mut u, i, r, &q);
                    if !a[i][c].is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            if a[r][c].is_zero() {
                continue;
            }
            if a[r][c].is_negative() {
                for x in a[r].iter_mut().chain(u[r].iter_mut()) {
                    *x = -&*x;
                }
            }
            for i in 0..r {
                let q = a[i][c].div_floor(&a[r][c]);
                row_sub(&mut a, i, r, &q);
                row_sub(&mut u, i, r, &q);
            }
            pivots.push(c);
            r += 1;
        }

        let kernel = u.split_off(r);
        a.truncate(r);
        Echelon {
            ncols,
            nrows_input: m,
            rows: a,
            pivots,
            transform: u,
            kernel,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis of `{ a : a · input = 0 }`.
    pub fn kernel(&self) -> &[Vec<BigInt>] {
        &self.kernel
    }

    /// Unique rational coefficients on the echelon rows, or `None` when `v`
    /// lies outside their rational span.
    pub fn decompose(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(v.len(), self.ncols, "vector width mismatch");
        let mut residual = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = &residual[p] / BigRational::from_integer(row[p].clone());
            if !c.is_zero() {
                for (x, y) in residual.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &c * BigRational::from_integer(y.clone());
                    }
                }
            }
            coeffs.push(c);
        }
        if residual.iter().all(Zero::is_zero) {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn decompose_int(&self, v: &[BigInt]) -> Option<Vec<BigRational>> {
        let v: Vec<BigRational> = v.iter().cloned().map(BigRational::from_integer).collect();
        self.decompose(&v)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.decompose_int(v)
            .is_some_and(|c| c.iter().all(|x| x.is_integer()))
    }

    /// Smallest `n >= 1` with `n·v` in the lattice; `None` if no multiple is.
    pub fn order_of(&self, v: &[BigRational]) -> Option<BigInt> {
        let coeffs = self.decompose(v)?;
        Some(
            coeffs
                .iter()
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom())),
        )
    }

    /// Integer coefficients `x` on the input rows with `x · input == v`.
    pub fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let coeffs = self.decompose_int(v)?;
        let mut out = vec![BigInt::zero(); self.nrows_input];
        for (c, t) in coeffs.iter().zip(&self.transform) {
            if !c.is_integer() {
                return None;
            }
            let c = c.to_integer();
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(t) {
                *o += &c * x;
            }
        }
        Some(out)
    }
}

/// Diagonal of the Smith form of a relation matrix, plus the column transform
/// `V` with `U · A · V = D`. A row vector `x` in the original coordinates
/// corresponds to `x · V` in the diagonal coordinates.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// One entry per column; zero marks a free direction.
    pub diagonal: Vec<BigInt>,
    pub column_transform: Vec<Vec<BigInt>>,
}

pub fn smith(relations: &[Vec<BigInt>], ncols: usize) -> SmithForm {
    let m = relations.len();
    let n = ncols;
    let mut a: Vec<Vec<BigInt>> = relations.to_vec();
    let mut v = identity(n);

    let col_sub = |mat: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        for row in mat.iter_mut() {
            if !row[src].is_zero() {
                let t = q * &row[src];
                row[dst] -= t;
            }
        }
    };
    let col_swap = |mat: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        for row in mat.iter_mut() {
            row.swap(i, j);
        }
    };

    let mut diagonal = vec![BigInt::zero(); n];
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap(t, bi);
            col_swap(&mut a, t, bj);
            col_swap(&mut v, t, bj);

            let mut dirty = false;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    row_sub(&mut a, i, t, &q);
                    dirty |= !a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    col_sub(&mut a, j, t, &q);
                    col_sub(&mut v, j, t, &q);
                    dirty |= !a[t][j].is_zero();
                }
            }
            if dirty {
                continue;
            }
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t]))
            });
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_sub(&mut a, t, i, &minus_one);
                }
                None => break,
            }
        }
        diagonal[t] = a[t][t].abs();
    }

    SmithForm {
        diagonal,
        column_transform: v,
    }
}
