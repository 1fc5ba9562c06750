//! The module `G(c) = C(R, Σc)` over the endomorphism algebra of a
//! dissection, described as a direct sum of string modules.
//!
//! An arc `c` contributes the dissection diagonals it crosses, listed in
//! the order met when walking from its smaller endpoint. Consecutive
//! crossed diagonals that share a polygon vertex are joined by an arrow;
//! otherwise the string breaks. The arrow direction is fixed by the side
//! of the arc on which the shared vertex lies.

use std::collections::BTreeMap;
use std::fmt;

use crate::cluster::{IndObj, Obj};
use crate::error::{Error, Result};
use crate::polygon::{crosses, Diagonal, Dissection, PolygonSize};

/// Direction of the arrow between two consecutive letters of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arrow {
    /// From letter `k` to letter `k + 1`.
    Forward,
    /// From letter `k + 1` to letter `k`.
    Backward,
}

impl Arrow {
    pub fn flipped(self) -> Arrow {
        match self {
            Arrow::Forward => Arrow::Backward,
            Arrow::Backward => Arrow::Forward,
        }
    }

    fn symbol(self) -> char {
        match self {
            Arrow::Forward => '>',
            Arrow::Backward => '<',
        }
    }
}

/// Which side of an arc makes an arrow point forward. Swapping it reverses
/// every arrow at once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Handedness {
    /// Shared vertex strictly between the arc's endpoints gives `Forward`.
    #[default]
    Left,
    Right,
}

/// A string word: letters are dissection diagonals, `arrows[k]` joins
/// `letters[k]` and `letters[k + 1]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StringWord {
    letters: Vec<Diagonal>,
    arrows: Vec<Arrow>,
}

impl StringWord {
    pub fn new(letters: Vec<Diagonal>, arrows: Vec<Arrow>) -> Result<Self> {
        if letters.is_empty() || arrows.len() + 1 != letters.len() {
            return Err(Error::Syntax(format!(
                "word with {} letters and {} arrows",
                letters.len(),
                arrows.len()
            )));
        }
        Ok(StringWord { letters, arrows })
    }

    pub fn letter(d: Diagonal) -> Self {
        StringWord {
            letters: vec![d],
            arrows: Vec::new(),
        }
    }

    pub fn letters(&self) -> &[Diagonal] {
        &self.letters
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The same string read backwards.
    pub fn reversed(&self) -> StringWord {
        StringWord {
            letters: self.letters.iter().rev().copied().collect(),
            arrows: self.arrows.iter().rev().map(|a| a.flipped()).collect(),
        }
    }

    /// Every arrow reversed, letters kept in place.
    pub fn opposite(&self) -> StringWord {
        StringWord {
            letters: self.letters.clone(),
            arrows: self.arrows.iter().map(|a| a.flipped()).collect(),
        }
    }

    fn canonical(&self) -> StringWord {
        let r = self.reversed();
        if r < *self {
            r
        } else {
            self.clone()
        }
    }

    pub fn parse(text: &str, n: PolygonSize) -> Result<Self> {
        let mut letters = Vec::new();
        let mut arrows = Vec::new();
        let mut rest = text.trim();
        loop {
            let cut = rest.find(['>', '<']).unwrap_or(rest.len());
            let token = rest[..cut].trim();
            let (a, b) = token
                .split_once('-')
                .ok_or_else(|| Error::Syntax(token.to_string()))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Syntax(token.to_string()))
            };
            letters.push(Diagonal::new(parse(a)?, parse(b)?, n)?);
            if cut == rest.len() {
                break;
            }
            arrows.push(if rest.as_bytes()[cut] == b'>' {
                Arrow::Forward
            } else {
                Arrow::Backward
            });
            rest = &rest[cut + 1..];
        }
        StringWord::new(letters, arrows)
    }
}

impl fmt::Display for StringWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letters[0])?;
        for (arrow, letter) in self.arrows.iter().zip(&self.letters[1..]) {
            write!(f, "{}{}", arrow.symbol(), letter)?;
        }
        Ok(())
    }
}

/// A finite direct sum of string modules; no words is the zero module.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GModule {
    words: Vec<StringWord>,
}

impl GModule {
    pub fn zero() -> Self {
        GModule::default()
    }

    pub fn from_words(words: Vec<StringWord>) -> Self {
        GModule { words }
    }

    pub fn words(&self) -> &[StringWord] {
        &self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    /// Direct sum.
    pub fn sum(&self, other: &GModule) -> GModule {
        GModule {
            words: self.words.iter().chain(&other.words).cloned().collect(),
        }
    }

    pub fn reversed(&self) -> GModule {
        GModule {
            words: self.words.iter().map(StringWord::opposite).collect(),
        }
    }

    pub fn dim_vec(&self) -> DimVec {
        let mut out = DimVec::zero();
        for w in &self.words {
            for &d in w.letters() {
                out.add(d, 1);
            }
        }
        out
    }

    /// Parses the `[w1, w2, ...]` form produced by `Display`.
    pub fn parse(text: &str, n: PolygonSize) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Syntax(text.to_string()))?;
        if inner.trim().is_empty() {
            return Ok(GModule::zero());
        }
        inner
            .split(',')
            .map(|w| StringWord::parse(w, n))
            .collect::<Result<Vec<_>>>()
            .map(GModule::from_words)
    }

    /// Serialises as a JSON list of word strings.
    pub fn to_json(&self) -> String {
        let words: Vec<String> = self.words.iter().map(|w| w.to_string()).collect();
        serde_json::to_string(&words).expect("string list serialises")
    }
}

impl fmt::Display for GModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, w) in self.words.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("]")
    }
}

/// A dimension vector: multiplicity of each simple, keyed by dissection
/// diagonal. Zero entries are not stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DimVec(BTreeMap<Diagonal, u32>);

impl DimVec {
    pub fn zero() -> Self {
        DimVec::default()
    }

    pub fn get(&self, d: Diagonal) -> u32 {
        self.0.get(&d).copied().unwrap_or(0)
    }

    pub fn add(&mut self, d: Diagonal, k: u32) {
        if k > 0 {
            *self.0.entry(d).or_insert(0) += k;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Diagonal, u32)> + '_ {
        self.0.iter().map(|(&d, &k)| (d, k))
    }

    pub fn plus(&self, other: &DimVec) -> DimVec {
        let mut out = self.clone();
        for (d, k) in other.iter() {
            out.add(d, k);
        }
        out
    }
}

impl FromIterator<(Diagonal, u32)> for DimVec {
    fn from_iter<I: IntoIterator<Item = (Diagonal, u32)>>(iter: I) -> Self {
        let mut out = DimVec::zero();
        for (d, k) in iter {
            out.add(d, k);
        }
        out
    }
}

/// The diagonals of the dissection crossed by `arc`, in the order met
/// walking from `arc.a()` to `arc.b()`.
///
/// A crossed diagonal has one endpoint `x` in `(a, b)` and one endpoint
/// `y` outside. Non-crossing diagonals met earlier have both `x - a` and
/// `a - y` (cyclically) no larger, so sorting on that pair gives the
/// separation order.
pub fn crossing_sequence(dissection: &Dissection, arc: Diagonal) -> Vec<Diagonal> {
    let n = dissection.polygon().vertices();
    let a = arc.a();
    let mut crossed: Vec<(usize, usize, Diagonal)> = dissection
        .diagonals()
        .iter()
        .filter(|&&d| crosses(arc, d))
        .map(|&d| {
            let (x, y) = if arc.strictly_inside(d.a()) {
                (d.a(), d.b())
            } else {
                (d.b(), d.a())
            };
            (x - a, (a + n - y) % n, d)
        })
        .collect();
    crossed.sort_unstable();
    crossed.into_iter().map(|(_, _, d)| d).collect()
}

pub fn string_of_arc(dissection: &Dissection, arc: Diagonal) -> Vec<StringWord> {
    string_of_arc_with(dissection, arc, Handedness::Left)
}

pub fn string_of_arc_with(
    dissection: &Dissection,
    arc: Diagonal,
    handedness: Handedness,
) -> Vec<StringWord> {
    let sequence = crossing_sequence(dissection, arc);
    let mut words = Vec::new();
    let mut letters: Vec<Diagonal> = Vec::new();
    let mut arrows = Vec::new();
    for d in sequence {
        if let Some(&prev) = letters.last() {
            match prev.shared_vertex(d) {
                Some(v) => {
                    let left = arc.strictly_inside(v);
                    arrows.push(if left == (handedness == Handedness::Left) {
                        Arrow::Forward
                    } else {
                        Arrow::Backward
                    });
                }
                None => {
                    words.push(StringWord {
                        letters: std::mem::take(&mut letters),
                        arrows: std::mem::take(&mut arrows),
                    });
                }
            }
        }
        letters.push(d);
    }
    if !letters.is_empty() {
        words.push(StringWord { letters, arrows });
    }
    words
}

/// `G(x)` as the direct sum of the strings of its summands.
pub fn g_module(dissection: &Dissection, x: &Obj) -> GModule {
    g_module_with(dissection, x, Handedness::Left)
}

pub fn g_module_with(dissection: &Dissection, x: &Obj, handedness: Handedness) -> GModule {
    GModule {
        words: x
            .summands()
            .iter()
            .flat_map(|&d| string_of_arc_with(dissection, d, handedness))
            .collect(),
    }
}

pub fn dim_vec(m: &GModule) -> DimVec {
    m.dim_vec()
}

/// String modules are isomorphic iff their words agree up to reversal,
/// as multisets.
pub fn is_isomorphic(m1: &GModule, m2: &GModule) -> bool {
    if m1.words.len() != m2.words.len() {
        return false;
    }
    let canon = |m: &GModule| {
        let mut ws: Vec<StringWord> = m.words.iter().map(StringWord::canonical).collect();
        ws.sort_unstable();
        ws
    };
    canon(m1) == canon(m2)
}

/// Whether `G` applied to the AR triangle ending in `c` is a split short
/// exact sequence.
///
/// When `c` or `tau c` is a summand of the dissection the image is not
/// short exact, so it is reported as non-split. Otherwise it is short
/// exact, and it splits exactly when the middle term is isomorphic to the
/// sum of the end terms.
pub fn mesh_is_split(dissection: &Dissection, c: IndObj) -> bool {
    let t = c.ar_triangle();
    if dissection.contains(c.diagonal()) || dissection.contains(t.start.diagonal()) {
        return false;
    }
    let middle = g_module(dissection, &t.middle);
    let outer = g_module(
        dissection,
        &Obj::new(c.polygon(), [t.start.diagonal(), c.diagonal()]),
    );
    is_isomorphic(&middle, &outer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::enumerate_dissections;

    fn size(n: usize) -> PolygonSize {
        PolygonSize::new(n).unwrap()
    }

    fn diag(a: usize, b: usize, n: usize) -> Diagonal {
        Diagonal::new(a, b, size(n)).unwrap()
    }

    fn dissection(n: usize, pairs: &[(usize, usize)]) -> Dissection {
        Dissection::from_pairs(size(n), pairs).unwrap()
    }

    /// Does `d` separate vertex `start` from both endpoints of `e`?
    fn separates(d: Diagonal, start: usize, e: Diagonal) -> bool {
        let side = |v: usize| d.strictly_inside(v);
        let start_side = side(start);
        e.endpoints()
            .iter()
            .all(|&v| d.has_endpoint(v) || side(v) != start_side)
    }

    #[test]
    fn crossing_sequence_examples() {
        let fan = dissection(6, &[(0, 2), (0, 3), (0, 4)]);
        assert_eq!(
            crossing_sequence(&fan, diag(1, 4, 6)),
            vec![diag(0, 2, 6), diag(0, 3, 6)]
        );
        let d = dissection(6, &[(0, 3)]);
        assert!(crossing_sequence(&d, diag(0, 3, 6)).is_empty());
        let oct = dissection(8, &[(0, 3), (4, 7)]);
        assert_eq!(
            crossing_sequence(&oct, diag(1, 5, 8)),
            vec![diag(0, 3, 8), diag(4, 7, 8)]
        );
    }

    #[test]
    fn crossing_sequence_is_separation_order() {
        for n in 6..=9 {
            let n = size(n);
            for d in enumerate_dissections(n) {
                for arc in n.diagonals() {
                    let seq = crossing_sequence(&d, arc);
                    for (k, &x) in seq.iter().enumerate() {
                        for &y in &seq[k + 1..] {
                            assert!(separates(x, arc.a(), y), "{d}: {arc} {x} {y}");
                            assert!(!separates(y, arc.a(), x));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn string_examples() {
        let fan = dissection(6, &[(0, 2), (0, 3), (0, 4)]);
        let words = string_of_arc(&fan, diag(1, 4, 6));
        assert_eq!(words.len(), 1);
        assert_eq!(words[0].letters(), &[diag(0, 2, 6), diag(0, 3, 6)]);

        let snake = dissection(6, &[(1, 3), (1, 4), (0, 4)]);
        let words = string_of_arc(&snake, diag(2, 5, 6));
        assert_eq!(words.len(), 1);
        assert_eq!(words[0].len(), 3);
        assert_ne!(words[0].arrows()[0], words[0].arrows()[1]);

        let oct = dissection(8, &[(0, 3), (4, 7)]);
        let words = string_of_arc(&oct, diag(1, 5, 8));
        assert_eq!(words.len(), 2);
        assert!(words.iter().all(|w| w.len() == 1));
    }

    #[test]
    fn fan_arrows_are_aligned() {
        let n = size(9);
        let fan =
            Dissection::from_pairs(n, &[(0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7)]).unwrap();
        let words = string_of_arc(&fan, diag(1, 8, 9));
        assert_eq!(words.len(), 1);
        assert_eq!(words[0].len(), 6);
        assert!(words[0].arrows().windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn g_module_examples() {
        let d = dissection(6, &[(0, 3)]);
        let n = d.polygon();
        let c = Obj::new(n, [diag(1, 4, 6)]);
        let m = g_module(&d, &c);
        assert_eq!(m.words(), &[StringWord::letter(diag(0, 3, 6))]);
        let cc = c.sum(&Obj::new(n, [diag(2, 5, 6)]));
        assert_eq!(
            g_module(&d, &cc),
            g_module(&d, &c).sum(&g_module(&d, &Obj::new(n, [diag(2, 5, 6)])))
        );
        for n in 6..=8 {
            for d in enumerate_dissections(size(n)) {
                for &r in d.diagonals() {
                    assert!(g_module(&d, &Obj::new(size(n), [r])).is_zero());
                }
            }
        }
    }

    #[test]
    fn dim_vec_examples() {
        assert!(GModule::zero().dim_vec().is_zero());
        for n in 6..=8 {
            let n = size(n);
            for d in enumerate_dissections(n) {
                for arc in n.diagonals() {
                    let m = g_module(&d, &Obj::new(n, [arc]));
                    let dv = m.dim_vec();
                    for &r in d.diagonals() {
                        assert_eq!(dv.get(r), crosses(r, arc) as u32);
                    }
                    for w in m.words() {
                        for pair in w.letters().windows(2) {
                            assert!(pair[0].shared_vertex(pair[1]).is_some());
                        }
                    }
                    let doubled = m.sum(&m).dim_vec();
                    assert_eq!(doubled, dv.plus(&dv));
                }
            }
        }
    }

    #[test]
    fn isomorphism_examples() {
        let n = size(6);
        let (a, b) = (diag(0, 2, 6), diag(0, 3, 6));
        let fwd = GModule::parse("[0-2>0-3]", n).unwrap();
        let back = GModule::parse("[0-3<0-2]", n).unwrap();
        let split = GModule::from_words(vec![StringWord::letter(a), StringWord::letter(b)]);
        assert!(is_isomorphic(&fwd, &fwd));
        assert!(is_isomorphic(&fwd, &back));
        assert!(!is_isomorphic(&fwd, &split));
        assert!(!is_isomorphic(&fwd, &fwd.reversed()));
    }

    #[test]
    fn handedness_is_a_global_flip() {
        for n in 6..=8 {
            let n = size(n);
            for d in enumerate_dissections(n) {
                for arc in n.diagonals() {
                    let x = Obj::new(n, [arc]);
                    let left = g_module_with(&d, &x, Handedness::Left);
                    let right = g_module_with(&d, &x, Handedness::Right);
                    assert!(is_isomorphic(&left.reversed(), &right));
                }
            }
        }
    }

    #[test]
    fn mesh_split_examples() {
        let d = dissection(6, &[(0, 3)]);
        let n = d.polygon();
        assert!(!mesh_is_split(&d, IndObj::from_vertices(1, 4, n).unwrap()));
        assert!(mesh_is_split(&d, IndObj::from_vertices(2, 5, n).unwrap()));
    }

    #[test]
    fn triangulations_never_split() {
        for n in 6..=9 {
            let n = size(n);
            for t in crate::polygon::enumerate_triangulations(n) {
                for c in crate::cluster::all_ind_objects(n).unwrap() {
                    assert!(!mesh_is_split(&t, c), "{t} {c}");
                }
            }
        }
    }

    #[test]
    fn serialisation() {
        let n = size(6);
        let m = GModule::parse("[0-2>0-3, 1-4<1-3>0-3]", n).unwrap();
        assert_eq!(m.to_string(), "[0-2>0-3, 1-4<1-3>0-3]");
        assert_eq!(GModule::parse(&m.to_string(), n).unwrap(), m);
        assert_eq!(m.to_json(), r#"["0-2>0-3","1-4<1-3>0-3"]"#);
        assert!(GModule::parse("[]", n).unwrap().is_zero());
        assert!(GModule::parse("0-2", n).is_err());
    }
}
