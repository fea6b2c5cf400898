//! Independent oracles and seeded corpora shared by the integration tests.
//!
//! The oracles only use the engine for polynomial construction and ring
//! arithmetic; all decisions are made by dense rational linear algebra or by
//! a separate division routine written here.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use rescomp::parser::parse_polynomial;
use rescomp::polyring::rat;
use rescomp::{Monomial, MonomialOrder, PolyMatrix, Polynomial, Rational, Ring};

pub fn ring(vars: &[&str]) -> Arc<Ring> {
    Ring::new(vars.iter().copied(), MonomialOrder::Grevlex).unwrap()
}

pub fn polys(r: &Arc<Ring>, src: &[&str]) -> Vec<Polynomial> {
    src.iter().map(|s| parse_polynomial(s, r).unwrap()).collect()
}

pub fn mat(r: &Arc<Ring>, rows: &[&[&str]]) -> PolyMatrix {
    PolyMatrix::from_rows(r, rows.iter().map(|row| polys(r, row)).collect()).unwrap()
}

/// All exponent vectors of total degree exactly `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(Monomial::from_exponents(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=d {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::from_exponents(vec![]));
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Incremental row-echelon span of sparse rational vectors.
pub struct Span<K: Ord + Clone> {
    basis: Vec<(K, BTreeMap<K, Rational>)>,
}

impl<K: Ord + Clone> Span<K> {
    pub fn new() -> Self {
        Span { basis: Vec::new() }
    }

    fn reduce(&self, mut v: BTreeMap<K, Rational>) -> BTreeMap<K, Rational> {
        for (pivot, b) in &self.basis {
            if let Some(c) = v.get(pivot).cloned() {
                for (k, bc) in b {
                    let e = v.entry(k.clone()).or_insert_with(Rational::zero);
                    *e -= &c * bc;
                    if e.is_zero() {
                        v.remove(k);
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: BTreeMap<K, Rational>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Returns whether the vector was independent of the span.
    pub fn insert(&mut self, v: BTreeMap<K, Rational>) -> bool {
        let r = self.reduce(v);
        let Some((pivot, c)) = r.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = c.recip();
        let r: BTreeMap<K, Rational> = r.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        self.basis.push((pivot, r));
        true
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn poly_vector(p: &Polynomial) -> BTreeMap<Vec<u32>, Rational> {
    p.terms()
        .iter()
        .map(|(m, c)| (m.exponents().to_vec(), c.clone()))
        .collect()
}

/// Truncated Macaulay-matrix membership: is `p` a Q-linear combination of
/// the products `m * g` with `deg(m * g) <= bound`? Exact for homogeneous
/// generators and a homogeneous `p` of degree at most `bound`.
pub fn macaulay_member(gens: &[Polynomial], p: &Polynomial, bound: u32) -> bool {
    if p.is_zero() {
        return true;
    }
    let n = p.ring().nvars();
    let mut span = Span::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let dg = g.total_degree().unwrap();
        for d in 0..=bound.saturating_sub(dg) {
            if dg + d > bound {
                continue;
            }
            for m in monomials_of_degree(n, d) {
                span.insert(poly_vector(&g.mul_term(&m, &Rational::one())));
            }
        }
    }
    span.contains(poly_vector(p))
}

/// Dense reduced row echelon form; returns pivot columns.
fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Basis of the nullspace of a dense matrix with `cols` columns.
pub fn nullspace(mut m: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// Degree of the nonzero entries of column `j` (all entries of a column must
/// be homogeneous of one common degree), or `None` for a zero column.
pub fn column_degree(a: &PolyMatrix, j: usize) -> Option<u32> {
    let mut deg = None;
    for i in 0..a.rows() {
        let p = a.get(i, j);
        if p.is_zero() {
            continue;
        }
        assert!(p.is_homogeneous_wrt(&vec![1; p.ring().nvars()]));
        let d = p.total_degree().unwrap();
        assert!(deg.is_none() || deg == Some(d), "column degrees must agree");
        deg = Some(d);
    }
    deg
}

/// Basis of `{v : A v = 0}` in degree `t`, where `v_j` is homogeneous of degree
/// `t - deg(column j)`; computed by plain linear algebra.
pub fn kernel_in_degree(a: &PolyMatrix, t: u32) -> Vec<Vec<Polynomial>> {
    let ring = a.ring().clone();
    let n = ring.nvars();
    let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
    for j in 0..a.cols() {
        let d = column_degree(a, j).unwrap_or(0);
        if t >= d {
            for m in monomials_of_degree(n, t - d) {
                unknowns.push((j, m));
            }
        }
    }
    let mut eq_index: BTreeMap<(usize, Vec<u32>), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Rational)> = Vec::new();
    for (u, (j, m)) in unknowns.iter().enumerate() {
        for i in 0..a.rows() {
            for (am, c) in a.get(i, *j).terms() {
                let key = (i, am.mul(m).exponents().to_vec());
                let next = eq_index.len();
                let row = *eq_index.entry(key).or_insert(next);
                entries.push((row, u, c.clone()));
            }
        }
    }
    let mut dense = vec![vec![Rational::zero(); unknowns.len()]; eq_index.len()];
    for (r, c, v) in entries {
        dense[r][c] += v;
    }
    nullspace(dense, unknowns.len())
        .into_iter()
        .map(|v| {
            let mut col = vec![Polynomial::zero(&ring); a.cols()];
            for (u, coeff) in v.iter().enumerate() {
                if !coeff.is_zero() {
                    let (j, m) = &unknowns[u];
                    col[*j] = &col[*j] + &Polynomial::monomial(&ring, m.clone(), coeff.clone());
                }
            }
            col
        })
        .collect()
}

/// Multivariate division by a list, written independently of the engine:
/// repeatedly cancel the largest term divisible by some leading term.
pub fn oracle_remainder(p: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    let ring = p.ring().clone();
    let order = ring.order().clone();
    let leads: Vec<(Monomial, Rational)> = divisors
        .iter()
        .filter(|d| !d.is_zero())
        .map(|d| d.leading_term(&order).unwrap())
        .collect();
    let ds: Vec<&Polynomial> = divisors.iter().filter(|d| !d.is_zero()).collect();
    let mut rem = p.clone();
    'outer: loop {
        for (m, c) in rem.terms().to_vec() {
            for (k, (lm, lc)) in leads.iter().enumerate() {
                if lm.divides(&m) {
                    let q = Monomial::from_exponents(
                        m.exponents()
                            .iter()
                            .zip(lm.exponents())
                            .map(|(a, b)| a - b)
                            .collect(),
                    );
                    rem = &rem - &ds[k].mul_term(&q, &(&c / lc));
                    continue 'outer;
                }
            }
        }
        return rem;
    }
}

/// Every S-polynomial of the list reduces to zero under [`oracle_remainder`].
pub fn spairs_reduce_to_zero(g: &[Polynomial]) -> bool {
    let order = g[0].ring().order().clone();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            let (mi, ci) = g[i].leading_term(&order).unwrap();
            let (mj, cj) = g[j].leading_term(&order).unwrap();
            let l = mi.lcm(&mj);
            let qi = mi.quotient_of(&l).unwrap();
            let qj = mj.quotient_of(&l).unwrap();
            let s = &g[i].mul_term(&qi, &ci.recip()) - &g[j].mul_term(&qj, &cj.recip());
            if !oracle_remainder(&s, g).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Random homogeneous polynomial of degree `d` with small integer coefficients.
pub fn random_homogeneous(rng: &mut ChaCha8Rng, ring: &Arc<Ring>, d: u32, density: f64) -> Polynomial {
    let mut terms = Vec::new();
    for m in monomials_of_degree(ring.nvars(), d) {
        if rng.gen_bool(density) {
            let c = rng.gen_range(-3i64..=3);
            if c != 0 {
                terms.push((m, rat(c)));
            }
        }
    }
    let p = Polynomial::from_terms(ring, terms);
    if p.is_zero() {
        // keep the degree honest
        let ms = monomials_of_degree(ring.nvars(), d);
        let m = ms[rng.gen_range(0..ms.len())].clone();
        Polynomial::monomial(ring, m, rat(1))
    } else {
        p
    }
}

/// Random polynomial of degree at most `d` with zero constant term.
pub fn random_no_constant(rng: &mut ChaCha8Rng, ring: &Arc<Ring>, d: u32) -> Polynomial {
    let mut acc = Polynomial::zero(ring);
    for k in 1..=d {
        if rng.gen_bool(0.6) {
            acc = &acc + &random_homogeneous(rng, ring, k, 0.5);
        }
    }
    acc
}

/// Matrix whose column `j` has homogeneous entries of degree `degs[j]`.
pub fn random_graded_matrix(rng: &mut ChaCha8Rng, ring: &Arc<Ring>, rows: usize, degs: &[u32]) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(ring, rows, degs.len());
    for (j, &d) in degs.iter().enumerate() {
        for i in 0..rows {
            if rng.gen_bool(0.8) {
                m.set(i, j, random_homogeneous(rng, ring, d, 0.5));
            }
        }
    }
    m
}
