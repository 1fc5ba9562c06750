//! Euler characteristics of submodule Grassmannians of string modules.
//!
//! For a direct sum of string modules, `χ(Gr_e(M))` equals the number of
//! successor-closed subsets of letter positions with dimension vector `e`.
//! The finite-field routines count subrepresentations over `GF(q)` and
//! recover the same numbers by interpolating the point count at `q = 1`;
//! they share nothing with the counting path and serve as its oracle.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::field::{FiniteField, SUPPORTED_FIELDS};
use crate::gmodule::{Arrow, DimVec, GModule, StringWord};
use crate::polygon::Diagonal;

/// `e ↦ χ(Gr_e(M))`, zero entries omitted.
pub type SubsetCountTable = BTreeMap<DimVec, u64>;

fn word_table(word: &StringWord) -> SubsetCountTable {
    // state: (last position included?, partial dimension vector)
    let mut states: BTreeMap<(bool, DimVec), u64> = BTreeMap::new();
    let first = word.letters()[0];
    states.insert((false, DimVec::zero()), 1);
    states.insert((true, DimVec::from_iter([(first, 1)])), 1);
    for (arrow, &letter) in word.arrows().iter().zip(&word.letters()[1..]) {
        let mut next: BTreeMap<(bool, DimVec), u64> = BTreeMap::new();
        for ((prev_in, dims), count) in states {
            for take in [false, true] {
                let allowed = match arrow {
                    // prev -> this: prev in S forces this in S
                    Arrow::Forward => !prev_in || take,
                    // this -> prev: this in S forces prev in S
                    Arrow::Backward => !take || prev_in,
                };
                if !allowed {
                    continue;
                }
                let mut dims = dims.clone();
                if take {
                    dims.add(letter, 1);
                }
                *next.entry((take, dims)).or_insert(0) += count;
            }
        }
        states = next;
    }
    let mut out = SubsetCountTable::new();
    for ((_, dims), count) in states {
        *out.entry(dims).or_insert(0) += count;
    }
    out
}

/// Table of a direct sum: the convolution of the summands' tables.
pub fn convolve(t1: &SubsetCountTable, t2: &SubsetCountTable) -> SubsetCountTable {
    let mut out = SubsetCountTable::new();
    for (e1, c1) in t1 {
        for (e2, c2) in t2 {
            *out.entry(e1.plus(e2)).or_insert(0) += c1 * c2;
        }
    }
    out
}

pub fn chi_table(m: &GModule) -> SubsetCountTable {
    let mut table = SubsetCountTable::from([(DimVec::zero(), 1)]);
    for w in m.words() {
        table = convolve(&table, &word_table(w));
    }
    table
}

/// Number of successor-closed subsets of one word.
fn word_total(word: &StringWord) -> u64 {
    // (subsets with last position excluded, with it included)
    let (mut out, mut inn) = (1u64, 1u64);
    for arrow in word.arrows() {
        let (o, i) = match arrow {
            Arrow::Forward => (out, out + inn),
            Arrow::Backward => (out + inn, inn),
        };
        out = o;
        inn = i;
    }
    out + inn
}

/// `Σ_e χ(Gr_e(M))`.
pub fn chi_total(m: &GModule) -> u64 {
    m.words().iter().fold(1u64, |acc, w| {
        acc.checked_mul(word_total(w))
            .expect("Euler characteristic overflows u64")
    })
}

/// A linear map between two coordinate spaces of a representation:
/// (source index, target index, basis pairs e_s ↦ e_t).
type BasisMap = (usize, usize, Vec<(usize, usize)>);

/// `M` as a quiver representation over a finite field: one coordinate
/// space per diagonal, one linear map per ordered pair of diagonals
/// joined by at least one arrow.
struct Representation {
    diagonals: Vec<Diagonal>,
    dims: Vec<usize>,
    maps: Vec<BasisMap>,
}

impl Representation {
    fn new(m: &GModule) -> Self {
        let mut index: BTreeMap<Diagonal, usize> = BTreeMap::new();
        let mut dims: Vec<usize> = Vec::new();
        let mut diagonals = Vec::new();
        // position of each letter: (diagonal index, basis vector)
        let mut positions: Vec<Vec<(usize, usize)>> = Vec::new();
        for w in m.words() {
            let mut pos = Vec::with_capacity(w.len());
            for &d in w.letters() {
                let k = *index.entry(d).or_insert_with(|| {
                    diagonals.push(d);
                    dims.push(0);
                    diagonals.len() - 1
                });
                pos.push((k, dims[k]));
                dims[k] += 1;
            }
            positions.push(pos);
        }
        let mut grouped: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
        for (w, pos) in m.words().iter().zip(&positions) {
            for (t, arrow) in w.arrows().iter().enumerate() {
                let (src, tgt) = match arrow {
                    Arrow::Forward => (pos[t], pos[t + 1]),
                    Arrow::Backward => (pos[t + 1], pos[t]),
                };
                grouped
                    .entry((src.0, tgt.0))
                    .or_default()
                    .push((src.1, tgt.1));
            }
        }
        Representation {
            diagonals,
            dims,
            maps: grouped.into_iter().map(|((s, t), m)| (s, t, m)).collect(),
        }
    }
}

/// A subspace of `GF(q)^n` with its full member list as a lookup table.
struct Subspace {
    dim: usize,
    basis: Vec<Vec<u8>>,
    members: Vec<bool>,
}

fn encode(v: &[u8], q: usize) -> usize {
    v.iter().rev().fold(0, |acc, &x| acc * q + x as usize)
}

/// All subspaces of `GF(q)^n`, via reduced row echelon forms.
fn subspaces(field: &FiniteField, n: usize) -> Vec<Subspace> {
    let q = field.order() as usize;
    let mut out = Vec::new();
    for pivots in 0u32..(1 << n) {
        let pivot_cols: Vec<usize> = (0..n).filter(|c| pivots & (1 << c) != 0).collect();
        // free slots: (row, column) right of the row's pivot, not a pivot column
        let free: Vec<(usize, usize)> = pivot_cols
            .iter()
            .enumerate()
            .flat_map(|(r, &c)| {
                ((c + 1)..n)
                    .filter(move |col| pivots & (1 << col) == 0)
                    .map(move |col| (r, col))
            })
            .collect();
        let combos = q.pow(free.len() as u32);
        for code in 0..combos {
            let mut basis: Vec<Vec<u8>> = pivot_cols
                .iter()
                .map(|&c| {
                    let mut row = vec![0u8; n];
                    row[c] = 1;
                    row
                })
                .collect();
            let mut code = code;
            for &(r, col) in &free {
                basis[r][col] = (code % q) as u8;
                code /= q;
            }
            let members = span(field, &basis, n);
            out.push(Subspace {
                dim: basis.len(),
                basis,
                members,
            });
        }
    }
    out
}

fn span(field: &FiniteField, basis: &[Vec<u8>], n: usize) -> Vec<bool> {
    let q = field.order() as usize;
    let mut members = vec![false; q.pow(n as u32)];
    for code in 0..q.pow(basis.len() as u32) {
        let mut v = vec![0u8; n];
        let mut code = code;
        for row in basis {
            let c = (code % q) as u8;
            code /= q;
            for (x, &r) in v.iter_mut().zip(row) {
                *x = field.add(*x, field.mul(c, r));
            }
        }
        members[encode(&v, q)] = true;
    }
    members
}

/// Counts stable subspace tuples, grouped by dimension vector, optionally
/// restricted to a single target dimension vector.
fn count_stable(
    rep: &Representation,
    field: &FiniteField,
    target: Option<&[usize]>,
) -> HashMap<Vec<usize>, u64> {
    let q = field.order() as usize;
    let choices: Vec<Vec<Subspace>> = rep
        .dims
        .iter()
        .enumerate()
        .map(|(k, &n)| {
            subspaces(field, n)
                .into_iter()
                .filter(|s| target.is_none_or(|t| s.dim == t[k]))
                .collect()
        })
        .collect();
    // maps checked once both endpoints are assigned
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); rep.dims.len()];
    for (idx, &(s, t, _)) in rep.maps.iter().enumerate() {
        checks[s.max(t)].push(idx);
    }
    let mut counts = HashMap::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(rep.dims.len());

    fn stable(
        rep: &Representation,
        field: &FiniteField,
        q: usize,
        choices: &[Vec<Subspace>],
        chosen: &[usize],
        map: usize,
    ) -> bool {
        let (s, t, ref pairs) = rep.maps[map];
        let source = &choices[s][chosen[s]];
        let target = &choices[t][chosen[t]];
        source.basis.iter().all(|u| {
            let mut image = vec![0u8; rep.dims[t]];
            for &(i, j) in pairs {
                image[j] = field.add(image[j], u[i]);
            }
            target.members[encode(&image, q)]
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        rep: &Representation,
        field: &FiniteField,
        q: usize,
        choices: &[Vec<Subspace>],
        checks: &[Vec<usize>],
        chosen: &mut Vec<usize>,
        counts: &mut HashMap<Vec<usize>, u64>,
    ) {
        let k = chosen.len();
        if k == choices.len() {
            let dims: Vec<usize> = chosen
                .iter()
                .enumerate()
                .map(|(d, &c)| choices[d][c].dim)
                .collect();
            *counts.entry(dims).or_insert(0) += 1;
            return;
        }
        for c in 0..choices[k].len() {
            chosen.push(c);
            if checks[k]
                .iter()
                .all(|&m| stable(rep, field, q, choices, chosen, m))
            {
                descend(rep, field, q, choices, checks, chosen, counts);
            }
            chosen.pop();
        }
    }

    descend(rep, field, q, &choices, &checks, &mut chosen, &mut counts);
    counts
}

fn dims_of(rep: &Representation, e: &DimVec) -> Option<Vec<usize>> {
    for (d, _) in e.iter() {
        if !rep.diagonals.contains(&d) {
            return None;
        }
    }
    let dims: Vec<usize> = rep.diagonals.iter().map(|&d| e.get(d) as usize).collect();
    if dims.iter().zip(&rep.dims).any(|(e, n)| e > n) {
        return None;
    }
    Some(dims)
}

/// Number of subrepresentations of `M` over `GF(q)` with dimension
/// vector `e`.
pub fn count_subreps_fq(m: &GModule, e: &DimVec, q: u32) -> Result<u64> {
    let field = FiniteField::new(q)?;
    let rep = Representation::new(m);
    let Some(dims) = dims_of(&rep, e) else {
        return Ok(0);
    };
    Ok(count_stable(&rep, &field, Some(&dims))
        .get(&dims)
        .copied()
        .unwrap_or(0))
}

/// Degree bound `Σ e(d) (dim_d - e(d))` of the ambient product of
/// Grassmannians.
fn degree_bound(dims: &[usize], e: &[usize]) -> usize {
    dims.iter().zip(e).map(|(n, k)| k * (n - k)).sum()
}

/// Value at `x = 1` of the polynomial through `points`, which must be an
/// integer.
fn interpolate_at_one(points: &[(i128, i128)]) -> Result<i64> {
    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let (mut num, mut den) = (0i128, 1i128);
    for (i, &(xi, yi)) in points.iter().enumerate() {
        let (mut tn, mut td) = (yi, 1i128);
        for (j, &(xj, _)) in points.iter().enumerate() {
            if i != j {
                tn *= 1 - xj;
                td *= xi - xj;
            }
        }
        num = num * td + tn * den;
        den *= td;
        let g = gcd(num, den).max(1);
        num /= g;
        den /= g;
    }
    if den < 0 {
        num = -num;
        den = -den;
    }
    if den != 1 {
        return Err(Error::NonPolynomialCount(format!("{num}/{den}")));
    }
    Ok(num as i64)
}

/// `χ(Gr_e(M))` recovered from finite-field point counts.
pub fn chi_via_fq(m: &GModule, e: &DimVec) -> Result<i64> {
    let rep = Representation::new(m);
    let Some(dims) = dims_of(&rep, e) else {
        return Ok(0);
    };
    let needed = degree_bound(&rep.dims, &dims) + 1;
    if needed > SUPPORTED_FIELDS.len() {
        return Err(Error::InsufficientSamples {
            needed,
            available: SUPPORTED_FIELDS.len(),
        });
    }
    let points = SUPPORTED_FIELDS[..needed]
        .iter()
        .map(|&q| {
            let field = FiniteField::new(q)?;
            let count = count_stable(&rep, &field, Some(&dims))
                .get(&dims)
                .copied()
                .unwrap_or(0);
            Ok((q as i128, count as i128))
        })
        .collect::<Result<Vec<_>>>()?;
    interpolate_at_one(&points)
}

/// The whole table via finite fields: one enumeration of all stable tuples
/// per sample field, then interpolation for every `e` in the box
/// `0 <= e <= dim M`. Entries equal to zero are omitted.
pub fn chi_table_via_fq(m: &GModule) -> Result<BTreeMap<DimVec, i64>> {
    let rep = Representation::new(m);
    let max_degree: usize = rep.dims.iter().map(|n| (n / 2) * (n - n / 2)).sum();
    let fields = (max_degree + 1).min(SUPPORTED_FIELDS.len());
    let samples = SUPPORTED_FIELDS[..fields]
        .iter()
        .map(|&q| Ok((q, count_stable(&rep, &FiniteField::new(q)?, None))))
        .collect::<Result<Vec<_>>>()?;
    let mut out = BTreeMap::new();
    let mut e = vec![0usize; rep.dims.len()];
    loop {
        let needed = degree_bound(&rep.dims, &e) + 1;
        if needed > SUPPORTED_FIELDS.len() {
            return Err(Error::InsufficientSamples {
                needed,
                available: SUPPORTED_FIELDS.len(),
            });
        }
        let points: Vec<(i128, i128)> = samples[..needed]
            .iter()
            .map(|(q, counts)| (*q as i128, counts.get(&e).copied().unwrap_or(0) as i128))
            .collect();
        let chi = interpolate_at_one(&points)?;
        if chi != 0 {
            let key: DimVec = rep
                .diagonals
                .iter()
                .zip(&e)
                .map(|(&d, &k)| (d, k as u32))
                .collect();
            out.insert(key, chi);
        }
        // odometer over the box
        let mut k = 0;
        loop {
            if k == e.len() {
                return Ok(out);
            }
            if e[k] < rep.dims[k] {
                e[k] += 1;
                break;
            }
            e[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::PolygonSize;

    fn size() -> PolygonSize {
        PolygonSize::new(8).unwrap()
    }

    fn module(text: &str) -> GModule {
        GModule::parse(text, size()).unwrap()
    }

    fn dv(pairs: &[((usize, usize), u32)]) -> DimVec {
        pairs
            .iter()
            .map(|&((a, b), k)| (Diagonal::new(a, b, size()).unwrap(), k))
            .collect()
    }

    /// Brute force over all subsets of letter positions.
    fn brute_table(m: &GModule) -> SubsetCountTable {
        let letters: Vec<(usize, Diagonal)> = m
            .words()
            .iter()
            .enumerate()
            .flat_map(|(w, word)| word.letters().iter().map(move |&d| (w, d)))
            .collect();
        let mut edges = Vec::new();
        let mut offset = 0;
        for w in m.words() {
            for (t, a) in w.arrows().iter().enumerate() {
                let (s, d) = (offset + t, offset + t + 1);
                edges.push(match a {
                    Arrow::Forward => (s, d),
                    Arrow::Backward => (d, s),
                });
            }
            offset += w.len();
        }
        let mut out = SubsetCountTable::new();
        for mask in 0u32..(1 << letters.len()) {
            if edges
                .iter()
                .all(|&(s, t)| mask & (1 << s) == 0 || mask & (1 << t) != 0)
            {
                let e: DimVec = letters
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask & (1 << k) != 0)
                    .map(|(_, &(_, d))| (d, 1))
                    .collect();
                *out.entry(e).or_insert(0) += 1;
            }
        }
        out
    }

    #[test]
    fn table_examples() {
        assert_eq!(
            chi_table(&GModule::zero()),
            SubsetCountTable::from([(DimVec::zero(), 1)])
        );
        let m = module("[0-2>0-3]");
        let expected = SubsetCountTable::from([
            (DimVec::zero(), 1),
            (dv(&[((0, 3), 1)]), 1),
            (dv(&[((0, 2), 1), ((0, 3), 1)]), 1),
        ]);
        assert_eq!(chi_table(&m), expected);
        assert_eq!(chi_total(&module("[1-3>1-4<0-4]")), 5);
        assert_eq!(chi_total(&module("[1-3<1-4>0-4]")), 5);
    }

    #[test]
    fn total_examples() {
        assert_eq!(chi_total(&GModule::zero()), 1);
        assert_eq!(chi_total(&module("[0-3, 4-7]")), 4);
        assert_eq!(chi_total(&module("[0-2>0-3]")), 3);
        assert_eq!(chi_total(&module("[0-2>0-3>0-4]")), 4);
    }

    #[test]
    fn dp_matches_brute_force() {
        for text in [
            "[0-2>0-3>0-4<1-4>1-5]",
            "[0-2<0-3<0-4, 0-2>0-3]",
            "[1-3<1-4>0-4, 0-3, 0-3]",
            "[0-2>0-3<0-4>0-5<0-6]",
        ] {
            let m = module(text);
            let table = chi_table(&m);
            assert_eq!(table, brute_table(&m), "{text}");
            assert_eq!(table.values().sum::<u64>(), chi_total(&m));
            assert_eq!(table.get(&DimVec::zero()), Some(&1));
            assert_eq!(table.get(&m.dim_vec()), Some(&1));
            assert_eq!(chi_total(&m.reversed()), chi_total(&m));
        }
    }

    #[test]
    fn fq_counts() {
        let m = module("[0-2>0-3]");
        assert_eq!(
            count_subreps_fq(&m, &dv(&[((0, 2), 1), ((0, 3), 1)]), 2).unwrap(),
            1
        );
        let two = module("[0-2, 0-3]");
        for q in SUPPORTED_FIELDS {
            assert_eq!(
                count_subreps_fq(&two, &dv(&[((0, 2), 1), ((0, 3), 1)]), q).unwrap(),
                1
            );
        }
        let same = module("[0-2, 0-2]");
        let line = dv(&[((0, 2), 1)]);
        assert_eq!(count_subreps_fq(&same, &line, 2).unwrap(), 3);
        assert_eq!(count_subreps_fq(&same, &line, 3).unwrap(), 4);
        assert_eq!(count_subreps_fq(&same, &line, 4).unwrap(), 5);
        assert_eq!(chi_via_fq(&same, &line).unwrap(), 2);
        assert_eq!(
            count_subreps_fq(&m, &DimVec::zero(), 6),
            Err(Error::UnsupportedField(6))
        );
    }

    #[test]
    fn fq_matches_table() {
        for text in [
            "[0-2>0-3]",
            "[0-2>0-3, 0-2>0-3]",
            "[1-3<1-4>0-4, 1-3<1-4]",
            "[0-2>0-3>0-4, 0-3<0-4]",
            "[0-3, 4-7]",
        ] {
            let m = module(text);
            let table = chi_table(&m);
            let via: BTreeMap<DimVec, i64> =
                table.iter().map(|(e, &c)| (e.clone(), c as i64)).collect();
            assert_eq!(chi_table_via_fq(&m).unwrap(), via, "{text}");
            for (e, &c) in &table {
                assert_eq!(chi_via_fq(&m, e).unwrap(), c as i64);
            }
        }
    }

    #[test]
    fn insufficient_samples() {
        // seven copies of a simple: e = 3 spans a 12-dimensional Grassmannian
        let m = module("[0-2, 0-2, 0-2, 0-2, 0-2, 0-2, 0-2]");
        assert!(matches!(
            chi_via_fq(&m, &dv(&[((0, 2), 3)])),
            Err(Error::InsufficientSamples { .. })
        ));
    }

    #[test]
    fn interpolation() {
        // q + 1 sampled at 2, 3
        assert_eq!(interpolate_at_one(&[(2, 3), (3, 4)]).unwrap(), 2);
        // q^2 + q + 1 at 2, 3, 4
        assert_eq!(interpolate_at_one(&[(2, 7), (3, 13), (4, 21)]).unwrap(), 3);
        assert!(interpolate_at_one(&[(2, 0), (4, 1)]).is_err());
    }
}
