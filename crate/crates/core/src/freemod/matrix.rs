use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{shape, AlgebraError, Result};
use crate::groebner::Ideal;
use crate::polyring::{same_ring, Polynomial, Rational, Ring};

/// Dense row-major matrix of polynomials, read as a map `R^cols -> R^rows`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Arc<Ring>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix{}x{}{}", self.rows, self.cols, self)
    }
}

/// Bracketed rows: `[[a, b], [c, d]]`. A matrix without rows prints as `[]`.
impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_strings()
            .into_iter()
            .map(|r| format!("[{}]", r.join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl PolyMatrix {
    pub fn zeros(ring: &Arc<Ring>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &Arc<Ring>, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(ring));
        }
        m
    }

    pub fn from_rows(ring: &Arc<Ring>, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map(Vec::len).unwrap_or(0);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(shape(
                    "matrix literal",
                    format!("row {i} has {} entries, expected {ncols}", row.len()),
                ));
            }
            for p in row {
                if !same_ring(p.ring(), ring) {
                    return Err(AlgebraError::RingMismatch);
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    /// Builds a `rows x columns.len()` matrix; each column must have `rows` entries.
    pub fn from_columns(ring: &Arc<Ring>, rows: usize, columns: Vec<Vec<Polynomial>>) -> Result<Self> {
        let mut m = Self::zeros(ring, rows, columns.len());
        for (j, col) in columns.into_iter().enumerate() {
            if col.len() != rows {
                return Err(shape(
                    "from_columns",
                    format!("column {j} has {} entries, expected {rows}", col.len()),
                ));
            }
            for (i, p) in col.into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> Vec<Polynomial> {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).to_string()).collect())
            .collect()
    }

    /// Exact product `self * other`.
    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        if self.cols != other.rows {
            return Err(shape(
                "mat_mul",
                format!(
                    "{}x{} times {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            ));
        }
        let mut out = PolyMatrix::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    fn zip_with(
        &self,
        other: &PolyMatrix,
        op: &'static str,
        f: impl Fn(&Polynomial, &Polynomial) -> Polynomial,
    ) -> Result<PolyMatrix> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(shape(
                op,
                format!(
                    "{}x{} vs {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            ));
        }
        Ok(PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip_with(other, "matrix addition", |a, b| a + b)
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip_with(other, "matrix subtraction", |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Submatrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(&self.ring, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn select_columns(&self, cols: &[usize]) -> PolyMatrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hcat(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows {
            return Err(shape(
                "hcat",
                format!("{} rows vs {} rows", self.rows, other.rows),
            ));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        PolyMatrix::from_columns(&self.ring, self.rows, cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
}

/// All `k`-element subsets of `0..n`, each increasing, in lexicographic order.
pub fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Cofactor expansion along the first remaining row, memoized on
/// (row set, column set) bitmasks so that all minors of one matrix share work.
struct Determinants<'a> {
    m: &'a PolyMatrix,
    memo: HashMap<(u64, u64), Polynomial>,
}

impl<'a> Determinants<'a> {
    fn new(m: &'a PolyMatrix) -> Self {
        assert!(m.rows < 64 && m.cols < 64, "matrix too large for minors");
        Determinants {
            m,
            memo: HashMap::new(),
        }
    }

    fn det(&mut self, rows: u64, cols: u64) -> Polynomial {
        if rows == 0 {
            return Polynomial::one(&self.m.ring);
        }
        if let Some(p) = self.memo.get(&(rows, cols)) {
            return p.clone();
        }
        let r = rows.trailing_zeros() as usize;
        let rest = rows & !(1 << r);
        let mut acc = Polynomial::zero(&self.m.ring);
        let mut pos = 0;
        for c in 0..self.m.cols {
            if cols & (1 << c) == 0 {
                continue;
            }
            let a = self.m.get(r, c).clone();
            if !a.is_zero() {
                let sub = self.det(rest, cols & !(1 << c));
                let term = &a * &sub;
                acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            pos += 1;
        }
        self.memo.insert((rows, cols), acc.clone());
        acc
    }

    fn minor(&mut self, rows: &[usize], cols: &[usize]) -> Polynomial {
        let rm = rows.iter().fold(0u64, |a, &r| a | (1 << r));
        let cm = cols.iter().fold(0u64, |a, &c| a | (1 << c));
        self.det(rm, cm)
    }
}

pub fn determinant(m: &PolyMatrix) -> Result<Polynomial> {
    if !m.is_square() {
        return Err(shape(
            "determinant",
            format!("{}x{} is not square", m.rows, m.cols),
        ));
    }
    let idx: Vec<usize> = (0..m.rows).collect();
    Ok(Determinants::new(m).minor(&idx, &idx))
}

/// Ideal generated by all `k x k` minors, listed by (row subset, column subset)
/// in lexicographic order.
pub fn minors(m: &PolyMatrix, k: usize) -> Result<Ideal> {
    if k == 0 || k > m.rows.min(m.cols) {
        return Err(AlgebraError::InvalidArgument(format!(
            "minor size {k} out of range for a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let ext = exterior_power(m, k);
    Ideal::new(&m.ring, ext.entries)
}

/// Matrix of `k x k` minors: entry (I, J) is the minor on rows I and columns J,
/// with index sets in lexicographic order. `k = 0` gives the 1x1 identity.
pub fn exterior_power(m: &PolyMatrix, k: usize) -> PolyMatrix {
    let rs = index_subsets(m.rows, k);
    let cs = index_subsets(m.cols, k);
    let mut dets = Determinants::new(m);
    let mut out = PolyMatrix::zeros(&m.ring, rs.len(), cs.len());
    for (i, r) in rs.iter().enumerate() {
        for (j, c) in cs.iter().enumerate() {
            out.set(i, j, dets.minor(r, c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::ideal_equal;
    use crate::parser::parse_polynomial;
    use crate::polyring::MonomialOrder;

    fn mat(r: &Arc<Ring>, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(
            r,
            rows.iter()
                .map(|row| row.iter().map(|s| parse_polynomial(s, r).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(
            index_subsets(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(index_subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(index_subsets(2, 3).is_empty());
    }

    #[test]
    fn products_and_shapes() {
        let r = Ring::new(["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
        let phi1 = mat(&r, &[&["y^2 - x*z", "x^3 - y*z", "x^2*y - z^2"]]);
        let phi2 = mat(&r, &[&["-z", "-x^2"], &["-y", "-z"], &["x", "y"]]);
        assert!(phi1.mul(&phi2).unwrap().is_zero());
        assert_eq!(PolyMatrix::identity(&r, 3).mul(&phi2).unwrap(), phi2);
        assert!(matches!(
            phi2.mul(&phi2),
            Err(AlgebraError::ShapeMismatch { .. })
        ));
        assert_eq!(phi2.to_string(), "[[-z, -x^2], [-y, -z], [x, y]]");
    }

    #[test]
    fn minors_examples() {
        let r = Ring::new(["x", "y", "z", "w"], MonomialOrder::Grevlex).unwrap();
        let m = mat(&r, &[&["x", "y"], &["z", "w"]]);
        let i = minors(&m, 2).unwrap();
        assert_eq!(i.generators(), &[parse_polynomial("x*w - y*z", &r).unwrap()]);
        let phi3 = mat(&r, &[&["w"], &["-z"], &["-y"], &["x"]]);
        let i = minors(&phi3, 1).unwrap();
        let expect = Ideal::new(
            &r,
            ["w", "z", "y", "x"].iter().map(|s| parse_polynomial(s, &r).unwrap()),
        )
        .unwrap();
        assert!(ideal_equal(&i, &expect).unwrap());
        assert!(minors(&phi3, 2).is_err());
        assert!(minors(&phi3, 0).is_err());

        let r3 = Ring::new(["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
        let phi2 = mat(&r3, &[&["-z", "-x^2"], &["-y", "-z"], &["x", "y"]]);
        let j = Ideal::new(
            &r3,
            ["y^2 - x*z", "x^3 - y*z", "x^2*y - z^2"]
                .iter()
                .map(|s| parse_polynomial(s, &r3).unwrap()),
        )
        .unwrap();
        assert!(ideal_equal(&minors(&phi2, 2).unwrap(), &j).unwrap());
    }

    #[test]
    fn determinant_by_cofactors() {
        let r = Ring::new(["x", "y"], MonomialOrder::Grevlex).unwrap();
        let m = mat(&r, &[&["1", "1"], &["1", "-1"]]);
        assert_eq!(determinant(&m).unwrap(), parse_polynomial("-2", &r).unwrap());
        let m = mat(&r, &[&["x", "0", "0"], &["1", "y", "0"], &["2", "x", "x*y"]]);
        assert_eq!(determinant(&m).unwrap(), parse_polynomial("x^2*y^2", &r).unwrap());
        assert!(determinant(&mat(&r, &[&["x", "y"]])).is_err());
    }
}
