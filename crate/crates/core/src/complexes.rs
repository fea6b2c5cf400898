//! Finite complexes of free modules `0 -> E_N -> ... -> E_1 -> E_0`:
//! Koszul complexes, free resolutions, minimalization, and the
//! Buchsbaum–Eisenbud exactness criterion.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{shape, AlgebraError, Result};
use crate::freemod::{index_subsets, minors, prune_columns, syzygies, PolyMatrix};
use crate::groebner::{codimension, Codim, Ideal};
use crate::polyring::{same_ring, Polynomial, Rational, Ring};

/// `maps[k - 1]` is the differential `phi_k : E_k -> E_{k-1}`, stored as a
/// `rank E_{k-1} x rank E_k` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    ring: Arc<Ring>,
    ranks: Vec<usize>,
    maps: Vec<PolyMatrix>,
}

impl Complex {
    /// Builds and verifies a complex from `phi_1, ..., phi_N` (at least one map).
    pub fn new(maps: Vec<PolyMatrix>) -> Result<Self> {
        let first = maps
            .first()
            .ok_or_else(|| AlgebraError::InvalidArgument("a complex needs at least one map".into()))?;
        let ring = first.ring().clone();
        Self::with_base_rank(&ring, first.rows(), maps)
    }

    /// Like [`Complex::new`] but also accepts an empty list of maps.
    pub fn with_base_rank(ring: &Arc<Ring>, rank0: usize, maps: Vec<PolyMatrix>) -> Result<Self> {
        let mut ranks = vec![rank0];
        for (i, m) in maps.iter().enumerate() {
            if !same_ring(m.ring(), ring) {
                return Err(AlgebraError::RingMismatch);
            }
            if m.rows() != ranks[i] {
                return Err(shape(
                    "complex",
                    format!(
                        "phi_{} has {} rows but E_{} has rank {}",
                        i + 1,
                        m.rows(),
                        i,
                        ranks[i]
                    ),
                ));
            }
            ranks.push(m.cols());
        }
        for k in 1..maps.len() {
            if !maps[k - 1].mul(&maps[k])?.is_zero() {
                return Err(AlgebraError::NotAComplex { k });
            }
        }
        Ok(Complex {
            ring: ring.clone(),
            ranks,
            maps,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// `N`, the index of the last module.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// `rank E_0, ..., rank E_N`.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Zero outside `0..=N`.
    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    pub fn maps(&self) -> &[PolyMatrix] {
        &self.maps
    }

    /// `phi_k` for `k >= 1`; beyond the length it is the zero map from the
    /// zero module.
    pub fn differential(&self, k: usize) -> PolyMatrix {
        assert!(k >= 1, "differentials start at phi_1");
        match self.maps.get(k - 1) {
            Some(m) => m.clone(),
            None => PolyMatrix::zeros(&self.ring, self.rank(k - 1), self.rank(k)),
        }
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ranks: Vec<String> = self.ranks.iter().map(|r| r.to_string()).collect();
        write!(f, "ranks ({})", ranks.join(", "))?;
        for (k, m) in self.maps.iter().enumerate() {
            write!(f, "\n  phi_{} = {}", k + 1, m)?;
        }
        Ok(())
    }
}

/// Koszul complex of `f_1, ..., f_p`: `E_k` has basis `e_I`, `|I| = k`, in
/// lexicographic order, and `d(e_I) = sum_j (-1)^(j-1) f_{i_j} e_{I - i_j}`.
pub fn koszul_complex(f: &[Polynomial]) -> Result<Complex> {
    let first = f
        .first()
        .ok_or_else(|| AlgebraError::InvalidArgument("Koszul complex of an empty tuple".into()))?;
    let ring = first.ring().clone();
    if f.iter().any(|p| !same_ring(p.ring(), &ring)) {
        return Err(AlgebraError::RingMismatch);
    }
    let p = f.len();
    let mut maps = Vec::with_capacity(p);
    for k in 1..=p {
        let rows = index_subsets(p, k - 1);
        let cols = index_subsets(p, k);
        let mut m = PolyMatrix::zeros(&ring, rows.len(), cols.len());
        for (c, set) in cols.iter().enumerate() {
            for j in 0..set.len() {
                let mut rest = set.clone();
                let i = rest.remove(j);
                let r = rows.binary_search(&rest).expect("subsets are sorted");
                let entry = if j % 2 == 0 { f[i].clone() } else { -&f[i] };
                m.set(r, c, entry);
            }
        }
        maps.push(m);
    }
    Complex::new(maps)
}

/// Resolution of `R/I` with `max_length` defaulting to the number of
/// variables. The result is minimal when the generators allow it and its
/// higher differentials are in a normalized form: each column scaled so the
/// last nonzero entry has leading coefficient one, columns sorted by that
/// entry's position and leading monomial, largest first.
pub fn free_resolution(ideal: &Ideal, max_length: Option<usize>) -> Result<Complex> {
    let ring = ideal.ring().clone();
    if ideal.is_zero() {
        return Err(AlgebraError::InvalidArgument(
            "the zero ideal has no resolution of this form".into(),
        ));
    }
    if ideal.is_unit() {
        return Err(AlgebraError::UnitIdeal);
    }
    let max_length = max_length.unwrap_or(ring.nvars()).max(1);
    let phi1 = PolyMatrix::from_rows(&ring, vec![ideal.generators().to_vec()])?;
    let mut maps = vec![phi1];
    loop {
        let next = prune_columns(&syzygies(maps.last().expect("nonempty")));
        if next.cols() == 0 {
            break;
        }
        if maps.len() >= max_length {
            return Err(AlgebraError::ResolutionTooLong { max_length });
        }
        maps.push(next);
    }
    let c = minimalize(&Complex::with_base_rank(&ring, 1, maps)?)?;
    normalize_bases(&c)
}

fn is_unit_constant(p: &Polynomial) -> bool {
    p.is_constant() && !p.is_zero()
}

/// Cancels trivial summands `O --c--> O` (nonzero constant `c`) until no
/// differential has a constant entry. An entry with nonzero constant term
/// but positive degree cannot be removed over the polynomial ring and is
/// reported as `NotMinimalizable`.
pub fn minimalize(c: &Complex) -> Result<Complex> {
    let ring = c.ring.clone();
    let mut rank0 = c.rank(0);
    let mut maps = c.maps.clone();
    loop {
        let pivot = maps.iter().enumerate().find_map(|(idx, m)| {
            (0..m.rows())
                .flat_map(|r| (0..m.cols()).map(move |col| (r, col)))
                .find(|&(r, col)| is_unit_constant(m.get(r, col)))
                .map(|(r, col)| (idx, r, col))
        });
        let Some((idx, i, j)) = pivot else { break };
        let m = &maps[idx];
        let inv = m.get(i, j).constant_term().recip();
        let keep_rows: Vec<usize> = (0..m.rows()).filter(|&r| r != i).collect();
        let keep_cols: Vec<usize> = (0..m.cols()).filter(|&l| l != j).collect();
        let mut schur = PolyMatrix::zeros(&ring, keep_rows.len(), keep_cols.len());
        for (a, &r) in keep_rows.iter().enumerate() {
            let factor = m.get(r, j).scale(&inv);
            for (b, &l) in keep_cols.iter().enumerate() {
                let v = m.get(r, l) - &(&factor * m.get(i, l));
                schur.set(a, b, v);
            }
        }
        if idx + 1 < maps.len() {
            let next = &maps[idx + 1];
            let rows: Vec<usize> = (0..next.rows()).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..next.cols()).collect();
            maps[idx + 1] = next.select(&rows, &cols);
        }
        if idx > 0 {
            let prev = &maps[idx - 1];
            let cols: Vec<usize> = (0..prev.cols()).filter(|&l| l != i).collect();
            maps[idx - 1] = prev.select_columns(&cols);
        } else {
            rank0 -= 1;
        }
        maps[idx] = schur;
    }
    while maps.last().is_some_and(|m| m.cols() == 0) {
        maps.pop();
    }
    for (idx, m) in maps.iter().enumerate() {
        for r in 0..m.rows() {
            for col in 0..m.cols() {
                if !m.get(r, col).constant_term().is_zero() {
                    return Err(AlgebraError::NotMinimalizable {
                        k: idx + 1,
                        row: r,
                        col,
                    });
                }
            }
        }
    }
    Complex::with_base_rank(&ring, rank0, maps)
}

/// Rescales and reorders the bases of `E_1, ..., E_{N}` as described on
/// [`free_resolution`]; `E_0` and `phi_1` keep their generator order except
/// for the column changes forced by `E_1`.
pub(crate) fn normalize_bases(c: &Complex) -> Result<Complex> {
    let ring = c.ring.clone();
    let order = ring.order().clone();
    let mut maps = c.maps.clone();
    for k in 2..=maps.len() {
        let m = &maps[k - 1];
        let mut cols = m.columns();
        let mut row_scale: Vec<Rational> = Vec::with_capacity(cols.len());
        let mut keys = Vec::with_capacity(cols.len());
        for col in cols.iter_mut() {
            let Some(last) = col.iter().rposition(|p| !p.is_zero()) else {
                row_scale.push(Rational::from_integer(1.into()));
                keys.push(None);
                continue;
            };
            let lc = col[last].leading_coefficient();
            let inv = lc.recip();
            for p in col.iter_mut() {
                *p = p.scale(&inv);
            }
            row_scale.push(lc);
            keys.push(Some((last, col[last].terms()[0].0.clone())));
        }
        let mut perm: Vec<usize> = (0..cols.len()).collect();
        perm.sort_by(|&a, &b| match (&keys[a], &keys[b]) {
            (Some((ra, ma)), Some((rb, mb))) => rb.cmp(ra).then_with(|| order.cmp(mb, ma)),
            (None, None) => Ordering::Equal,
            (None, _) => Ordering::Greater,
            (_, None) => Ordering::Less,
        });
        let sorted: Vec<Vec<Polynomial>> = perm.iter().map(|&j| cols[j].clone()).collect();
        maps[k - 1] = PolyMatrix::from_columns(&ring, m.rows(), sorted)?;
        if k < maps.len() {
            let next = &maps[k];
            let rows: Vec<Vec<Polynomial>> = perm
                .iter()
                .map(|&j| next.row(j).iter().map(|p| p.scale(&row_scale[j])).collect())
                .collect();
            maps[k] = PolyMatrix::from_rows(&ring, rows)?;
        }
    }
    Complex::with_base_rank(&ring, c.rank(0), maps)
}

/// `r_1, ..., r_{N+1}` with `r_{N+1} = 0` and `r_k = rank E_k - r_{k+1}`.
pub fn expected_ranks(c: &Complex) -> Vec<i64> {
    let n = c.length();
    let mut r = vec![0i64; n + 1];
    for k in (1..=n).rev() {
        r[k - 1] = c.rank(k) as i64 - r[k];
    }
    r
}

fn fitting_of(phi: &PolyMatrix, r: usize) -> Result<Ideal> {
    let ring = phi.ring();
    if r == 0 {
        return Ideal::new(ring, [Polynomial::one(ring)]);
    }
    if r > phi.rows().min(phi.cols()) {
        return Ideal::new(ring, []);
    }
    minors(phi, r)
}

/// `I_{r_k}(phi_k)`, the ideal of `r_k x r_k` minors (unit ideal when
/// `r_k = 0`, zero ideal when `r_k` exceeds the matrix size).
pub fn fitting_support(c: &Complex, k: usize) -> Result<Ideal> {
    if k == 0 || k > c.length() {
        return Err(AlgebraError::InvalidArgument(format!(
            "degree {k} outside 1..={}",
            c.length()
        )));
    }
    let r = expected_ranks(c)[k - 1];
    if r < 0 {
        return Err(AlgebraError::InvalidArgument(format!(
            "expected rank r_{k} = {r} is negative"
        )));
    }
    fitting_of(&c.maps[k - 1], r as usize)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessWitness {
    pub k: usize,
    pub expected_rank: i64,
    /// `None` when the expected rank is negative.
    pub fitting_codim: Option<Codim>,
    pub rank_ok: bool,
    pub depth_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    /// `r_1, ..., r_{N+1}`.
    pub expected_ranks: Vec<i64>,
    /// `codim I_{r_k}(phi_k)` for `k = 1..=N`.
    pub fitting_codims: Vec<Option<Codim>>,
    pub exact: bool,
    pub witnesses: Vec<ExactnessWitness>,
}

impl fmt::Display for ExactnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "exact: {}", self.exact)?;
        for w in &self.witnesses {
            let codim = w
                .fitting_codim
                .map(|c| c.to_string())
                .unwrap_or_else(|| "-".into());
            write!(
                f,
                "  k = {}: r_k = {}, codim I_r(phi_k) = {} (need >= {}){}",
                w.k,
                w.expected_rank,
                codim,
                w.k,
                if w.rank_ok && w.depth_ok { "" } else { "  FAILS" }
            )?;
            if w.k < self.witnesses.len() {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Exactness of `0 -> E_N -> ... -> E_1` (acyclicity of `E`) via
/// Buchsbaum–Eisenbud: every `r_k >= 0` and `codim I_{r_k}(phi_k) >= k`.
pub fn buchsbaum_eisenbud_exact(c: &Complex) -> Result<ExactnessReport> {
    let ranks = expected_ranks(c);
    let mut witnesses = Vec::with_capacity(c.length());
    for k in 1..=c.length() {
        let r = ranks[k - 1];
        let (fitting_codim, rank_ok, depth_ok) = if r < 0 {
            (None, false, false)
        } else {
            let codim = codimension(&fitting_of(&c.maps[k - 1], r as usize)?);
            (Some(codim), true, codim.at_least(k))
        };
        witnesses.push(ExactnessWitness {
            k,
            expected_rank: r,
            fitting_codim,
            rank_ok,
            depth_ok,
        });
    }
    Ok(ExactnessReport {
        expected_ranks: ranks,
        fitting_codims: witnesses.iter().map(|w| w.fitting_codim).collect(),
        exact: witnesses.iter().all(|w| w.rank_ok && w.depth_ok),
        witnesses,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmReport {
    pub is_cm: bool,
    /// Length of the minimal resolution.
    pub length: usize,
    pub codim: Codim,
}

impl fmt::Display for CmReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.is_cm { "=" } else { "!=" };
        write!(
            f,
            "CM: {} (length {} {rel} codim {})",
            self.is_cm, self.length, self.codim
        )
    }
}

pub(crate) fn cohen_macaulay_with_resolution(ideal: &Ideal) -> Result<(CmReport, Complex)> {
    let res = free_resolution(ideal, None)?;
    let codim = codimension(ideal);
    let length = res.length();
    Ok((
        CmReport {
            is_cm: codim == Codim::Finite(length),
            length,
            codim,
        },
        res,
    ))
}

/// `R/I` is Cohen–Macaulay iff its minimal resolution has length `codim I`.
pub fn cohen_macaulay_check(ideal: &Ideal) -> Result<CmReport> {
    cohen_macaulay_with_resolution(ideal).map(|(r, _)| r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::ideal_equal;
    use crate::parser::parse_polynomial;
    use crate::polyring::MonomialOrder;

    fn ring(vars: &[&str]) -> Arc<Ring> {
        Ring::new(vars.iter().copied(), MonomialOrder::Grevlex).unwrap()
    }

    fn polys(r: &Arc<Ring>, src: &[&str]) -> Vec<Polynomial> {
        src.iter().map(|s| parse_polynomial(s, r).unwrap()).collect()
    }

    fn mat(r: &Arc<Ring>, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(r, rows.iter().map(|row| polys(r, row)).collect()).unwrap()
    }

    #[test]
    fn koszul_shapes_and_signs() {
        let r = ring(&["x", "y"]);
        let k = koszul_complex(&polys(&r, &["x", "y"])).unwrap();
        assert_eq!(k.ranks(), &[1, 2, 1]);
        assert_eq!(k.maps()[1], mat(&r, &[&["-y"], &["x"]]));
        let r3 = ring(&["x", "y", "z"]);
        let k = koszul_complex(&polys(&r3, &["x", "y", "z"])).unwrap();
        assert_eq!(k.ranks(), &[1, 3, 3, 1]);
        let k = koszul_complex(&polys(&r3, &["x^2", "0"])).unwrap();
        assert_eq!(k.ranks(), &[1, 2, 1]);
        assert!(koszul_complex(&[]).is_err());
    }

    #[test]
    fn rejects_non_complexes() {
        let r = ring(&["x", "y"]);
        let e = Complex::new(vec![mat(&r, &[&["x", "y"]]), mat(&r, &[&["y"], &["y"]])]);
        assert_eq!(e.unwrap_err(), AlgebraError::NotAComplex { k: 1 });
        assert!(Complex::new(vec![mat(&r, &[&["x", "y"]]), mat(&r, &[&["y"]])]).is_err());
    }

    #[test]
    fn monomial_curve_resolution_is_normalized() {
        let r = ring(&["x", "y", "z"]);
        let j = Ideal::new(&r, polys(&r, &["y^2 - x*z", "x^3 - y*z", "x^2*y - z^2"])).unwrap();
        let e = free_resolution(&j, None).unwrap();
        assert_eq!(e.ranks(), &[1, 3, 2]);
        assert_eq!(e.maps()[1], mat(&r, &[&["-z", "-x^2"], &["-y", "-z"], &["x", "y"]]));
        let rep = buchsbaum_eisenbud_exact(&e).unwrap();
        assert!(rep.exact);
        assert_eq!(rep.expected_ranks, vec![1, 2, 0]);
        for k in 1..=2 {
            assert!(ideal_equal(&fitting_support(&e, k).unwrap(), &j).unwrap());
        }
        let cm = cohen_macaulay_check(&j).unwrap();
        assert_eq!((cm.is_cm, cm.length, cm.codim), (true, 2, Codim::Finite(2)));
    }

    #[test]
    fn two_planes_are_not_cm() {
        let r = ring(&["x", "y", "z", "w"]);
        let i = Ideal::new(&r, polys(&r, &["x*z", "x*w", "y*z", "y*w"])).unwrap();
        let e = free_resolution(&i, None).unwrap();
        assert_eq!(e.ranks(), &[1, 4, 4, 1]);
        let cm = cohen_macaulay_check(&i).unwrap();
        assert_eq!((cm.is_cm, cm.length, cm.codim), (false, 3, Codim::Finite(2)));
    }

    #[test]
    fn redundant_generators_are_minimalized() {
        let r = ring(&["x", "y"]);
        let i = Ideal::new(&r, polys(&r, &["x", "y", "x + y"])).unwrap();
        let e = free_resolution(&i, None).unwrap();
        assert_eq!(e.ranks(), &[1, 2, 1]);
        let m = Ideal::new(&r, polys(&r, &["x"])).unwrap();
        assert_eq!(free_resolution(&m, None).unwrap().ranks(), &[1, 1]);
        let unit = Ideal::new(&r, polys(&r, &["1 + x", "x"])).unwrap();
        assert_eq!(free_resolution(&unit, None).unwrap_err(), AlgebraError::UnitIdeal);
    }

    #[test]
    fn identity_summand_is_cancelled() {
        let r = ring(&["x", "y"]);
        let padded = Complex::new(vec![
            mat(&r, &[&["x", "y", "0"]]),
            mat(&r, &[&["-y", "0"], &["x", "0"], &["0", "1"]]),
        ])
        .unwrap();
        let m = minimalize(&padded).unwrap();
        assert_eq!(m.ranks(), &[1, 2, 1]);
        let local = Complex::new(vec![mat(&r, &[&["1 + x"]])]).unwrap();
        assert!(matches!(
            minimalize(&local),
            Err(AlgebraError::NotMinimalizable { k: 1, .. })
        ));
    }

    #[test]
    fn exactness_of_koszul_complexes() {
        let r = ring(&["x", "y"]);
        let k = koszul_complex(&polys(&r, &["x", "y"])).unwrap();
        let rep = buchsbaum_eisenbud_exact(&k).unwrap();
        assert!(rep.exact);
        assert_eq!(rep.expected_ranks, vec![1, 1, 0]);
        assert_eq!(rep.fitting_codims, vec![Some(Codim::Finite(2)), Some(Codim::Finite(2))]);
        let k = koszul_complex(&polys(&r, &["x", "x*y"])).unwrap();
        let rep = buchsbaum_eisenbud_exact(&k).unwrap();
        assert!(!rep.exact);
        assert!(!rep.witnesses[1].depth_ok);
    }

    #[test]
    fn expected_ranks_of_short_complexes() {
        let r = ring(&["x"]);
        let c = Complex::new(vec![mat(&r, &[&["x"]])]).unwrap();
        assert_eq!(expected_ranks(&c), vec![1, 0]);
        let c = Complex::new(vec![mat(&r, &[&["x", "x^2"]])]).unwrap();
        assert_eq!(expected_ranks(&c), vec![2, 0]);
        assert!(!buchsbaum_eisenbud_exact(&c).unwrap().exact);
    }
}
