//! The modified Caldero-Chapoton map `ρ_R(c) = Σ_e χ(Gr_e(Gc))` and the
//! mesh and extension identities it satisfies.

use crate::cluster::{IndObj, Obj};
use crate::error::{Error, Result};
use crate::gmodule::{g_module, mesh_is_split, string_of_arc};
use crate::grassmann::chi_total;
use crate::polygon::{crosses, Diagonal, Dissection};

pub fn rho(dissection: &Dissection, x: &Obj) -> u64 {
    chi_total(&g_module(dissection, x))
}

/// `ρ` of a single diagonal.
pub fn rho_diagonal(dissection: &Dissection, d: Diagonal) -> u64 {
    chi_total(&crate::gmodule::GModule::from_words(string_of_arc(
        dissection, d,
    )))
}

/// The difference `ρ(τc)ρ(c) − ρ(b)` over the AR triangle ending in `c`,
/// and whether `G` of that triangle splits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeshReport {
    pub c: IndObj,
    pub difference: u8,
    pub split: bool,
}

pub fn mesh_difference(dissection: &Dissection, c: IndObj) -> i128 {
    let t = c.ar_triangle();
    rho_diagonal(dissection, t.start.diagonal()) as i128
        * rho_diagonal(dissection, c.diagonal()) as i128
        - rho(dissection, &t.middle) as i128
}

pub fn mesh_report(dissection: &Dissection, c: IndObj) -> Result<MeshReport> {
    let difference = mesh_difference(dissection, c);
    if difference != 0 && difference != 1 {
        return Err(Error::FriezeViolation {
            diagonal: c.to_string(),
            difference,
        });
    }
    Ok(MeshReport {
        c,
        difference: difference as u8,
        split: mesh_is_split(dissection, c),
    })
}

/// The two middle terms of the non-split extensions between `m` and a
/// crossing dissection diagonal `s`.
///
/// With `m = {i, j}` and `s = {k, l}` in cyclic order `i, k, j, l` these
/// are `a = {i,l} ⊕ {j,k}` (from `m -> a -> s`) and `b = {i,k} ⊕ {j,l}`
/// (from `s -> b -> m`); polygon edges are zero.
pub fn extension_terms(m: IndObj, s: Diagonal) -> Result<(Obj, Obj)> {
    let d = m.diagonal();
    if !crosses(d, s) {
        return Err(Error::NotCrossing(d.to_string(), s.to_string()));
    }
    let n = m.polygon();
    let (i, j) = (d.a() as isize, d.b() as isize);
    let (k, l) = if d.strictly_inside(s.a()) {
        (s.a() as isize, s.b() as isize)
    } else {
        (s.b() as isize, s.a() as isize)
    };
    let pair = |x: (isize, isize), y: (isize, isize)| {
        Obj::new(
            n,
            [x, y]
                .into_iter()
                .filter_map(|(p, q)| Diagonal::reduced(p, q, n)),
        )
    };
    Ok((pair((i, l), (j, k)), pair((i, k), (j, l))))
}

/// Checks `ρ(m) = ρ(a) + ρ(b)` for a diagonal `s` of the dissection
/// crossing `m`.
pub fn extension_check(dissection: &Dissection, m: IndObj, s: Diagonal) -> Result<bool> {
    if !dissection.contains(s) {
        return Err(Error::NotInDissection(s.to_string()));
    }
    let (a, b) = extension_terms(m, s)?;
    Ok(rho_diagonal(dissection, m.diagonal()) == rho(dissection, &a) + rho(dissection, &b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::PolygonSize;

    fn hexagon(pairs: &[(usize, usize)]) -> Dissection {
        Dissection::from_pairs(PolygonSize::new(6).unwrap(), pairs).unwrap()
    }

    fn ind(a: usize, b: usize) -> IndObj {
        IndObj::from_vertices(a, b, PolygonSize::new(6).unwrap()).unwrap()
    }

    #[test]
    fn rho_examples() {
        let d = hexagon(&[(0, 3)]);
        assert_eq!(rho(&d, &ind(1, 4).into()), 2);
        assert_eq!(rho(&d, &ind(0, 3).into()), 1);
        assert_eq!(rho(&d, &Obj::zero(d.polygon())), 1);
        let fan = hexagon(&[(0, 2), (0, 3), (0, 4)]);
        assert_eq!(rho(&fan, &ind(1, 4).into()), 3);
        let snake = hexagon(&[(1, 3), (1, 4), (0, 4)]);
        assert_eq!(rho(&snake, &ind(2, 5).into()), 5);
        let oct = PolygonSize::new(8).unwrap();
        let d = Dissection::from_pairs(oct, &[(0, 3), (4, 7)]).unwrap();
        assert_eq!(
            rho(&d, &IndObj::from_vertices(1, 5, oct).unwrap().into()),
            4
        );
    }

    #[test]
    fn mesh_examples() {
        let d = hexagon(&[(0, 3)]);
        let r = mesh_report(&d, ind(1, 4)).unwrap();
        assert_eq!((r.difference, r.split), (1, false));
        let r = mesh_report(&d, ind(2, 5)).unwrap();
        assert_eq!((r.difference, r.split), (0, true));
    }

    #[test]
    fn extension_examples() {
        let d = hexagon(&[(0, 3)]);
        let s = ind(0, 3).diagonal();
        let (a, b) = extension_terms(ind(1, 4), s).unwrap();
        assert!(a.is_zero());
        assert_eq!(b.summands(), &[ind(0, 4).diagonal(), ind(1, 3).diagonal()]);
        assert!(extension_check(&d, ind(1, 4), s).unwrap());

        let fan = hexagon(&[(0, 2), (0, 3), (0, 4)]);
        assert!(extension_check(&fan, ind(1, 4), s).unwrap());

        assert!(matches!(
            extension_check(&d, ind(1, 3), s),
            Err(Error::NotCrossing(..))
        ));
        assert!(matches!(
            extension_check(&d, ind(0, 3), ind(1, 4).diagonal()),
            Err(Error::NotInDissection(_))
        ));
    }
}
