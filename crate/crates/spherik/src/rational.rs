//! Exact rational scalars, vectors and matrices.
//!
//! Every geometric predicate downstream depends on exact signs, so all of
//! this is arbitrary-precision rational arithmetic; no floating point.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::error::Error;

pub type Rat = BigRational;
pub type QVec = Vec<Rat>;

pub fn rat_i64(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p/q" or "p" with integer p, q.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt, Error> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("invalid rational: {s:?}")))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(parse_int(p)?, den))
        }
    }
}

pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn vec_str(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_str).collect()
}

pub fn parse_vec(v: &[String]) -> Result<QVec, Error> {
    v.iter().map(|s| parse_rat(s)).collect()
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    // Good enough for reporting and tolerance comparisons.
    let p = r.numer();
    let q = r.denom();
    match (p.to_string().parse::<f64>(), q.to_string().parse::<f64>()) {
        (Ok(a), Ok(b)) if b != 0.0 && a.is_finite() && b.is_finite() => a / b,
        _ => {
            // Fall back through a scaled division for huge operands.
            let scaled = (p * BigInt::from(1u64 << 53)) / q;
            scaled.to_string().parse::<f64>().unwrap_or(f64::NAN) / (1u64 << 53) as f64
        }
    }
}

pub fn zeros(n: usize) -> QVec {
    vec![Rat::zero(); n]
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "dot: dimension mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add_vec(a: &[Rat], b: &[Rat]) -> QVec {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rat], b: &[Rat]) -> QVec {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(t: &Rat, a: &[Rat]) -> QVec {
    a.iter().map(|x| t * x).collect()
}

pub fn neg_vec(a: &[Rat]) -> QVec {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Scales a nonzero rational vector to the primitive integer vector on the
/// same ray. Returns `None` for the zero vector.
pub fn primitive_direction(v: &[Rat]) -> Option<QVec> {
    if is_zero_vec(v) {
        return None;
    }
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::zero();
    for n in &ints {
        g = g.gcd(n);
    }
    Some(ints.iter().map(|n| Rat::from_integer(n / &g)).collect())
}

pub fn is_integer_vec(v: &[Rat]) -> bool {
    v.iter().all(|x| x.denom().is_one())
}

pub fn is_primitive_integer(v: &[Rat]) -> bool {
    if !is_integer_vec(v) || is_zero_vec(v) {
        return false;
    }
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x.numer());
    }
    g.is_one()
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl QMat {
    pub fn new(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::new(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<QVec>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(cols: Vec<QVec>) -> Self {
        let t = QMat::from_rows(cols);
        t.transpose()
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> QVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::new(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rat]) -> QVec {
        assert_eq!(self.cols, v.len(), "mul_vec: dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn mul_mat(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        let mut out = QMat::new(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut s = Rat::zero();
                for k in 0..self.cols {
                    s += &self[(i, k)] * &other[(k, j)];
                }
                out[(i, j)] = s;
            }
        }
        out
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rat::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !m[(i, col)].is_zero()) else {
                return Rat::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det *= &pivot;
            for i in col + 1..n {
                let f = &m[(i, col)] / &pivot;
                for j in col..n {
                    let sub = &f * &m[(col, j)];
                    m[(i, j)] -= sub;
                }
            }
        }
        det
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, rank);
            let pivot = m[(rank, col)].clone();
            for i in 0..rows {
                if i != rank && !m[(i, col)].is_zero() {
                    let f = &m[(i, col)] / &pivot;
                    for j in col..cols {
                        let sub = &f * &m[(rank, j)];
                        m[(i, j)] -= sub;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = QMat::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&i| !m[(i, col)].is_zero())?;
            m.swap_rows(p, col);
            inv.swap_rows(p, col);
            let pivot = m[(col, col)].clone();
            for j in 0..n {
                m[(col, j)] /= &pivot;
                inv[(col, j)] /= &pivot;
            }
            for i in 0..n {
                if i != col && !m[(i, col)].is_zero() {
                    let f = m[(i, col)].clone();
                    for j in 0..n {
                        let s1 = &f * &m[(col, j)];
                        m[(i, j)] -= s1;
                        let s2 = &f * &inv[(col, j)];
                        inv[(i, j)] -= s2;
                    }
                }
            }
        }
        Some(inv)
    }

    /// Solves A x = b exactly. Returns `None` when the system is
    /// inconsistent. For underdetermined consistent systems one solution
    /// (free variables set to zero) is returned.
    pub fn solve(&self, b: &[Rat]) -> Option<QVec> {
        assert_eq!(self.rows, b.len());
        let mut m = self.clone();
        let mut rhs = b.to_vec();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivot_cols = Vec::new();
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, rank);
            rhs.swap(p, rank);
            let pivot = m[(rank, col)].clone();
            for j in col..cols {
                m[(rank, j)] /= &pivot;
            }
            rhs[rank] /= &pivot;
            for i in 0..rows {
                if i != rank && !m[(i, col)].is_zero() {
                    let f = m[(i, col)].clone();
                    for j in col..cols {
                        let sub = &f * &m[(rank, j)];
                        m[(i, j)] -= sub;
                    }
                    let sub = &f * &rhs[rank];
                    rhs[i] -= sub;
                }
            }
            pivot_cols.push(col);
            rank += 1;
        }
        for i in rank..rows {
            if !rhs[i].is_zero() {
                return None;
            }
        }
        let mut x = zeros(cols);
        for (r, &c) in pivot_cols.iter().enumerate() {
            x[c] = rhs[r].clone();
        }
        Some(x)
    }

    /// Basis of the kernel {x : A x = 0}.
    pub fn kernel(&self) -> Vec<QVec> {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivot_cols = Vec::new();
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, rank);
            let pivot = m[(rank, col)].clone();
            for j in col..cols {
                m[(rank, j)] /= &pivot;
            }
            for i in 0..rows {
                if i != rank && !m[(i, col)].is_zero() {
                    let f = m[(i, col)].clone();
                    for j in col..cols {
                        let sub = &f * &m[(rank, j)];
                        m[(i, j)] -= sub;
                    }
                }
            }
            pivot_cols.push(col);
            rank += 1;
        }
        let mut basis = Vec::new();
        for free in 0..cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = zeros(cols);
            v[free] = Rat::one();
            for (r, &c) in pivot_cols.iter().enumerate() {
                v[c] = -m[(r, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

pub fn rank_of_vectors(vs: &[QVec]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    QMat::from_rows(vs.to_vec()).rank()
}

/// Affine rank of a point set minus one, i.e. the dimension of its affine hull.
pub fn affine_dim(points: &[QVec]) -> usize {
    match points.split_first() {
        None => 0,
        Some((p0, rest)) => rank_of_vectors(&rest.iter().map(|p| sub_vec(p, p0)).collect::<Vec<_>>()),
    }
}

/// Sign of a rational: -1, 0 or 1.
pub fn sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(rat_str(&parse_rat("3/6").unwrap()), "1/2");
        assert_eq!(rat_str(&parse_rat("-4").unwrap()), "-4");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn solve_and_inverse() {
        let a = QMat::from_rows(vec![
            vec![rat_i64(2), rat_i64(1)],
            vec![rat_i64(1), rat_i64(3)],
        ]);
        let x = a.solve(&[rat_i64(5), rat_i64(10)]).unwrap();
        assert_eq!(x, vec![rat_i64(1), rat_i64(3)]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul_mat(&inv), QMat::identity(2));
    }

    #[test]
    fn inconsistent_system() {
        let a = QMat::from_rows(vec![
            vec![rat_i64(1), rat_i64(1)],
            vec![rat_i64(2), rat_i64(2)],
        ]);
        assert!(a.solve(&[rat_i64(1), rat_i64(3)]).is_none());
    }

    #[test]
    fn primitive() {
        let v = vec![rat_frac(2, 3), rat_frac(4, 3)];
        let p = primitive_direction(&v).unwrap();
        assert_eq!(p, vec![rat_i64(1), rat_i64(2)]);
        assert!(is_primitive_integer(&p));
        assert!(primitive_direction(&zeros(3)).is_none());
    }

    #[test]
    fn kernel_basis() {
        let a = QMat::from_rows(vec![vec![rat_i64(1), rat_i64(2), rat_i64(3)]]);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(dot(a.row(0), v).is_zero());
        }
    }
}
