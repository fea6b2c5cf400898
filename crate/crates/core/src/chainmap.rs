//! Morphisms of complexes: lifting a degree-0 map through an exact target,
//! homotopies between two lifts, and the exterior-power lift between Koszul
//! complexes.

use std::fmt;

use crate::complexes::{koszul_complex, Complex};
use crate::error::{shape, AlgebraError, Result};
use crate::freemod::{default_module_order, exterior_power, lift_through_with, ModuleOrder, PolyMatrix};
use crate::groebner::{normal_form, Ideal};
use crate::polyring::Polynomial;

/// `a_k : F_k -> E_k` for `k = 0..=len F`; `a_k` is a `rank E_k x rank F_k`
/// matrix, with zero rows once `E` has ended.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    maps: Vec<PolyMatrix>,
}

impl ChainMap {
    /// Checks shapes only; see [`validate_chain_map`] for commutativity.
    pub fn new(source: Complex, target: Complex, maps: Vec<PolyMatrix>) -> Result<Self> {
        if maps.len() != source.length() + 1 {
            return Err(shape(
                "chain map",
                format!(
                    "source has length {}, so {} maps are needed, got {}",
                    source.length(),
                    source.length() + 1,
                    maps.len()
                ),
            ));
        }
        for (k, a) in maps.iter().enumerate() {
            if (a.rows(), a.cols()) != (target.rank(k), source.rank(k)) {
                return Err(shape(
                    "chain map",
                    format!(
                        "a_{k} is {}x{}, expected {}x{}",
                        a.rows(),
                        a.cols(),
                        target.rank(k),
                        source.rank(k)
                    ),
                ));
            }
        }
        Ok(ChainMap {
            source,
            target,
            maps,
        })
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn maps(&self) -> &[PolyMatrix] {
        &self.maps
    }

    pub fn map(&self, k: usize) -> &PolyMatrix {
        &self.maps[k]
    }

    /// `a_p` for `p = len F`.
    pub fn top(&self) -> &PolyMatrix {
        self.maps.last().expect("at least a_0")
    }

    pub fn is_valid(&self) -> bool {
        validate_chain_map(self).iter().all(PolyMatrix::is_zero)
    }
}

impl fmt::Display for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, a) in self.maps.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "  a_{k} = {a}")?;
        }
        Ok(())
    }
}

/// `s_k : F_k -> E_{k+1}` for `k = 0..=len F`.
#[derive(Clone, Debug, PartialEq)]
pub struct Homotopy {
    pub maps: Vec<PolyMatrix>,
}

impl fmt::Display for Homotopy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.maps.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "  s_{k} = {s}")?;
        }
        Ok(())
    }
}

/// Residuals `phi_k a_k - a_{k-1} psi_k` for `k = 1..=len F`.
pub fn validate_chain_map(a: &ChainMap) -> Vec<PolyMatrix> {
    (1..=a.source.length())
        .map(|k| {
            let left = a.target.differential(k).mul(&a.maps[k]).expect("shapes checked");
            let right = a.maps[k - 1]
                .mul(&a.source.differential(k))
                .expect("shapes checked");
            left.sub(&right).expect("shapes checked")
        })
        .collect()
}

/// Extends `a0 : F_0 -> E_0` to a chain map, `a_k = lift(phi_k, a_{k-1} psi_k)`.
/// The target must be exact in positive degrees; this is not re-checked.
pub fn lift_morphism(f: &Complex, e: &Complex, a0: &PolyMatrix) -> Result<ChainMap> {
    lift_morphism_with(f, e, a0, &default_module_order(e.ring()))
}

/// [`lift_morphism`] with an explicit module order for the division steps.
pub fn lift_morphism_with(
    f: &Complex,
    e: &Complex,
    a0: &PolyMatrix,
    ord: &ModuleOrder,
) -> Result<ChainMap> {
    if (a0.rows(), a0.cols()) != (e.rank(0), f.rank(0)) {
        return Err(shape(
            "lift_morphism",
            format!(
                "a_0 is {}x{}, expected {}x{}",
                a0.rows(),
                a0.cols(),
                e.rank(0),
                f.rank(0)
            ),
        ));
    }
    let mut maps = vec![a0.clone()];
    for k in 1..=f.length() {
        let rhs = maps[k - 1].mul(&f.differential(k))?;
        let ak = lift_through_with(&e.differential(k), &rhs, ord).map_err(|err| match err {
            AlgebraError::NotLiftable { column } => AlgebraError::LiftFailed { degree: k, column },
            other => other,
        })?;
        maps.push(ak);
    }
    ChainMap::new(f.clone(), e.clone(), maps)
}

/// `s` with `a_k - b_k = phi_{k+1} s_k - s_{k-1} psi_k`, built by
/// `s_k = lift(phi_{k+1}, a_k - b_k + s_{k-1} psi_k)`.
pub fn homotopy_between(a: &ChainMap, b: &ChainMap) -> Result<Homotopy> {
    if a.source != b.source || a.target != b.target {
        return Err(AlgebraError::InvalidArgument(
            "chain maps have different source or target complexes".into(),
        ));
    }
    if a.maps[0] != b.maps[0] {
        return Err(AlgebraError::DifferentBaseMaps);
    }
    let (f, e) = (&a.source, &a.target);
    let ord = default_module_order(e.ring());
    let mut maps: Vec<PolyMatrix> = Vec::with_capacity(f.length() + 1);
    for k in 0..=f.length() {
        let mut rhs = a.maps[k].sub(&b.maps[k])?;
        if k > 0 {
            rhs = rhs.add(&maps[k - 1].mul(&f.differential(k))?)?;
        }
        let sk = lift_through_with(&e.differential(k + 1), &rhs, &ord).map_err(|err| match err {
            AlgebraError::NotLiftable { column } => AlgebraError::LiftFailed { degree: k, column },
            other => other,
        })?;
        maps.push(sk);
    }
    Ok(Homotopy { maps })
}

/// `a_k - b_k - (phi_{k+1} s_k - s_{k-1} psi_k)` for every `k`; all zero iff
/// `s` is a homotopy from `b` to `a`.
pub fn homotopy_residuals(a: &ChainMap, b: &ChainMap, s: &Homotopy) -> Result<Vec<PolyMatrix>> {
    let (f, e) = (&a.source, &a.target);
    if s.maps.len() != f.length() + 1 {
        return Err(shape("homotopy", "wrong number of maps"));
    }
    (0..=f.length())
        .map(|k| {
            let mut rhs = e.differential(k + 1).mul(&s.maps[k])?;
            if k > 0 {
                rhs = rhs.sub(&s.maps[k - 1].mul(&f.differential(k))?)?;
            }
            a.maps[k].sub(&b.maps[k])?.sub(&rhs)
        })
        .collect()
}

/// Chain map `Koszul(g A) -> Koszul(g)` with `a_k` the k-th exterior power of
/// the square matrix `A`; the top map is `det A`.
pub fn det_lift_koszul(a: &PolyMatrix, g: &[Polynomial]) -> Result<ChainMap> {
    if !a.is_square() || a.rows() != g.len() {
        return Err(shape(
            "det_lift_koszul",
            format!("A is {}x{} but g has {} entries", a.rows(), a.cols(), g.len()),
        ));
    }
    let row = PolyMatrix::from_rows(a.ring(), vec![g.to_vec()])?;
    let f = row.mul(a)?.row(0);
    let source = koszul_complex(&f)?;
    let target = koszul_complex(g)?;
    let maps = (0..=g.len()).map(|k| exterior_power(a, k)).collect();
    ChainMap::new(source, target, maps)
}

/// Entrywise congruence of two same-shaped matrices modulo an ideal.
pub fn congruent_mod(a: &PolyMatrix, b: &PolyMatrix, ideal: &Ideal) -> Result<bool> {
    let d = a.sub(b)?;
    if d.is_zero() {
        return Ok(true);
    }
    let gb = ideal.groebner_basis();
    for p in d.entries() {
        if !normal_form(p, &gb.elements, &gb.order)?.0.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::free_resolution;
    use crate::parser::parse_polynomial;
    use crate::polyring::{rat, MonomialOrder, Ring};
    use std::sync::Arc;

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
    fn curve_lift_matches_printed_matrices_up_to_homotopy() {
        let r = ring(&["x", "y", "z"]);
        let j = Ideal::new(&r, polys(&r, &["y^2 - x*z", "x^3 - y*z", "x^2*y - z^2"])).unwrap();
        let f = polys(&r, &["z^2 - x^2*y", "x^4 + y^3 - 2*x*y*z"]);
        let e = free_resolution(&j, None).unwrap();
        let kf = koszul_complex(&f).unwrap();
        let one = PolyMatrix::identity(&r, 1);
        let a = lift_morphism(&kf, &e, &one).unwrap();
        assert!(a.is_valid());
        let printed = ChainMap::new(
            kf.clone(),
            e.clone(),
            vec![
                one.clone(),
                mat(&r, &[&["0", "y"], &["0", "x"], &["-1", "0"]]),
                mat(&r, &[&["x^3 - y*z"], &["y^2 - x*z"]]),
            ],
        )
        .unwrap();
        assert!(validate_chain_map(&printed).iter().all(PolyMatrix::is_zero));
        let s = homotopy_between(&a, &printed).unwrap();
        assert!(homotopy_residuals(&a, &printed, &s).unwrap().iter().all(PolyMatrix::is_zero));
        let fi = Ideal::new(&r, f).unwrap();
        assert!(congruent_mod(a.top(), printed.top(), &fi).unwrap());
    }

    #[test]
    fn perturbed_map_has_a_residual() {
        let r = ring(&["x", "y"]);
        let k = koszul_complex(&polys(&r, &["x", "y"])).unwrap();
        let mut a1 = PolyMatrix::identity(&r, 2);
        a1.set(0, 0, parse_polynomial("2", &r).unwrap());
        let bad = ChainMap::new(
            k.clone(),
            k.clone(),
            vec![PolyMatrix::identity(&r, 1), a1, PolyMatrix::identity(&r, 1)],
        )
        .unwrap();
        let res = validate_chain_map(&bad);
        assert!(!res[0].is_zero());
    }

    #[test]
    fn identity_lift_and_base_map_mismatch() {
        let r = ring(&["x", "y"]);
        let k = koszul_complex(&polys(&r, &["x", "y"])).unwrap();
        let id = lift_morphism(&k, &k, &PolyMatrix::identity(&r, 1)).unwrap();
        let s = homotopy_between(&id, &id).unwrap();
        assert!(s.maps.iter().all(PolyMatrix::is_zero));
        let two = PolyMatrix::identity(&r, 1).scale(&rat(2));
        let other = lift_morphism(&k, &k, &two).unwrap();
        assert_eq!(homotopy_between(&id, &other).unwrap_err(), AlgebraError::DifferentBaseMaps);
    }

    #[test]
    fn incompatible_base_map_fails_in_degree_one() {
        let r = ring(&["x", "y"]);
        let big = koszul_complex(&polys(&r, &["x", "y"])).unwrap();
        let small = koszul_complex(&polys(&r, &["x^2", "y"])).unwrap();
        let err = lift_morphism(&big, &small, &PolyMatrix::identity(&r, 1)).unwrap_err();
        assert!(matches!(err, AlgebraError::LiftFailed { degree: 1, .. }));
        let ok = lift_morphism(&small, &big, &PolyMatrix::identity(&r, 1)).unwrap();
        assert_eq!(ok.top(), &mat(&r, &[&["x"]]));
    }

    #[test]
    fn exterior_power_lift() {
        let r = ring(&["x", "y"]);
        let g = polys(&r, &["x", "y"]);
        let a = mat(&r, &[&["1", "1"], &["1", "-1"]]);
        let c = det_lift_koszul(&a, &g).unwrap();
        assert!(c.is_valid());
        assert_eq!(c.top(), &mat(&r, &[&["-2"]]));
        let d = mat(&r, &[&["x + 1", "0"], &["0", "y"]]);
        assert_eq!(det_lift_koszul(&d, &g).unwrap().top(), &mat(&r, &[&["x*y + y"]]));
        let id = det_lift_koszul(&PolyMatrix::identity(&r, 2), &g).unwrap();
        assert_eq!(id.map(1), &PolyMatrix::identity(&r, 2));
        assert!(det_lift_koszul(&PolyMatrix::identity(&r, 3), &g).is_err());
    }
}
