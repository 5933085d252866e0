//! Words in the standard generators, the surface relator, Fox derivatives
//! and the `♯` involution on the integral group ring.
//!
//! Surface-group words use `α_i`, `β_i`; free-group words use `γ_i`. The
//! string form writes `a1 b1 c1` for generators and `A1 B1 C1` for their
//! inverses, separated by whitespace. Words are never reduced implicitly.

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::cohomology::Cocycle;
use crate::error::{Error, Result};
use crate::group::{GroupElement, LieVector};
use crate::rep::Representation;
use crate::scalar::{lit, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Alpha,
    Beta,
    Gamma,
}

/// A generator `α_i`, `β_i` or `γ_i`, with 1-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: Kind,
    pub index: usize,
}

impl Generator {
    pub fn alpha(index: usize) -> Self {
        Generator { kind: Kind::Alpha, index }
    }

    pub fn beta(index: usize) -> Self {
        Generator { kind: Kind::Beta, index }
    }

    pub fn gamma(index: usize) -> Self {
        Generator { kind: Kind::Gamma, index }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: Generator, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match (self.generator.kind, self.inverse) {
            (Kind::Alpha, false) => 'a',
            (Kind::Alpha, true) => 'A',
            (Kind::Beta, false) => 'b',
            (Kind::Beta, true) => 'B',
            (Kind::Gamma, false) => 'c',
            (Kind::Gamma, true) => 'C',
        };
        write!(f, "{c}{}", self.generator.index)
    }
}

/// A word in the generators of a genus-`g` surface group (or a rank-`g`
/// free group). The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    genus: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(genus: usize) -> Self {
        Word { genus, letters: Vec::new() }
    }

    pub fn new(genus: usize, letters: Vec<Letter>) -> Result<Self> {
        for l in &letters {
            if l.generator.index == 0 || l.generator.index > genus {
                return Err(Error::IndexOutOfRange { index: l.generator.index, max: genus });
            }
        }
        Ok(Word { genus, letters })
    }

    /// Parses `"a1 b1 A1 B1"`; an empty string or `"1"` is the identity.
    pub fn parse(genus: usize, s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let mut chars = tok.chars();
            let head = chars.next().unwrap_or(' ');
            let (kind, inverse) = match head {
                'a' => (Kind::Alpha, false),
                'A' => (Kind::Alpha, true),
                'b' => (Kind::Beta, false),
                'B' => (Kind::Beta, true),
                'c' => (Kind::Gamma, false),
                'C' => (Kind::Gamma, true),
                _ => return Err(Error::InvalidWord(format!("bad letter `{tok}`"))),
            };
            let index = chars.as_str().parse::<usize>().map_err(|_| Error::InvalidWord(format!("bad index in `{tok}`")))?;
            letters.push(Letter::new(Generator { kind, index }, inverse));
        }
        Word::new(genus, letters)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word { genus: self.genus, letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    /// Concatenation `self · other`, unreduced.
    pub fn concat(&self, other: &Word) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { genus: self.genus.max(other.genus), letters }
    }

    pub fn push(mut self, letter: Letter) -> Self {
        self.letters.push(letter);
        self
    }

    /// Free reduction: cancels adjacent `x x⁻¹` pairs until none remain.
    pub fn reduce(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last().is_some_and(|&p| p == l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { genus: self.genus, letters: out }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A formal integer combination of words. Terms are kept as given; equal
/// words are not merged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    genus: usize,
    terms: Vec<(i64, Word)>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coef: i64,
    word: String,
}

impl GroupRingElement {
    /// Builds an element, dropping zero coefficients.
    pub fn new(genus: usize, terms: Vec<(i64, Word)>) -> Result<Self> {
        for (_, w) in &terms {
            if w.genus != genus {
                return Err(Error::GenusMismatch { expected: genus, found: w.genus });
            }
        }
        Ok(GroupRingElement { genus, terms: terms.into_iter().filter(|(c, _)| *c != 0).collect() })
    }

    pub fn from_word(w: Word) -> Self {
        GroupRingElement { genus: w.genus, terms: vec![(1, w)] }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn terms(&self) -> &[(i64, Word)] {
        &self.terms
    }

    /// The involution `Σ nᵢγᵢ ↦ Σ nᵢγᵢ⁻¹`.
    pub fn sharp(&self) -> Self {
        GroupRingElement { genus: self.genus, terms: self.terms.iter().map(|(c, w)| (*c, w.inverse())).collect() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<TermJson> = self.terms.iter().map(|(c, w)| TermJson { coef: *c, word: w.to_string() }).collect();
        serde_json::to_value(terms).expect("plain data")
    }

    pub fn from_json(genus: usize, v: &serde_json::Value) -> Result<Self> {
        let terms: Vec<TermJson> = serde_json::from_value(v.clone())?;
        let terms = terms.into_iter().map(|t| Ok((t.coef, Word::parse(genus, &t.word)?))).collect::<Result<Vec<_>>>()?;
        Self::new(genus, terms)
    }
}

impl Serialize for GroupRingElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

fn check_genus(g: usize) -> Result<()> {
    if g == 0 {
        Err(Error::InvalidGenus(g))
    } else {
        Ok(())
    }
}

fn commutator(i: usize) -> [Letter; 4] {
    [
        Letter::new(Generator::alpha(i), false),
        Letter::new(Generator::beta(i), false),
        Letter::new(Generator::alpha(i), true),
        Letter::new(Generator::beta(i), true),
    ]
}

/// `R = α₁β₁α₁⁻¹β₁⁻¹ ⋯ α_gβ_gα_g⁻¹β_g⁻¹`.
pub fn relator(g: usize) -> Result<Word> {
    partial_relator(g, g)
}

/// `R_k`, the product of the first `k` commutators; `R_0` is empty.
pub fn partial_relator(g: usize, k: usize) -> Result<Word> {
    check_genus(g)?;
    if k > g {
        return Err(Error::IndexOutOfRange { index: k, max: g });
    }
    let letters = (1..=k).flat_map(commutator).collect();
    Ok(Word { genus: g, letters })
}

fn check_index(g: usize, i: usize) -> Result<()> {
    check_genus(g)?;
    if i == 0 || i > g {
        return Err(Error::IndexOutOfRange { index: i, max: g });
    }
    Ok(())
}

/// `∂R/∂α_i = R_{i−1} − R_i β_i`.
pub fn fox_alpha(g: usize, i: usize) -> Result<GroupRingElement> {
    check_index(g, i)?;
    let prev = partial_relator(g, i - 1)?;
    let cur = partial_relator(g, i)?.push(Letter::new(Generator::beta(i), false));
    Ok(GroupRingElement { genus: g, terms: vec![(1, prev), (-1, cur)] })
}

/// `∂R/∂β_i = R_{i−1} α_i − R_i`.
pub fn fox_beta(g: usize, i: usize) -> Result<GroupRingElement> {
    check_index(g, i)?;
    let prev = partial_relator(g, i - 1)?.push(Letter::new(Generator::alpha(i), false));
    let cur = partial_relator(g, i)?;
    Ok(GroupRingElement { genus: g, terms: vec![(1, prev), (-1, cur)] })
}

/// Fox derivative of the relator with respect to a surface generator.
pub fn fox_derivative(g: usize, generator: Generator) -> Result<GroupRingElement> {
    match generator.kind {
        Kind::Alpha => fox_alpha(g, generator.index),
        Kind::Beta => fox_beta(g, generator.index),
        Kind::Gamma => Err(Error::InvalidWord("the surface relator has no γ generators".into())),
    }
}

pub fn sharp(x: &GroupRingElement) -> GroupRingElement {
    x.sharp()
}

fn check_word<T: Real, R: Representation<T> + ?Sized>(rep: &R, w: &Word) -> Result<()> {
    if w.genus != rep.rank() {
        return Err(Error::GenusMismatch { expected: rep.rank(), found: w.genus });
    }
    for l in &w.letters {
        if rep.slot(l.generator).is_none() {
            return Err(Error::InvalidWord(format!("generator {l} not in this group")));
        }
    }
    Ok(())
}

fn letter_image<T: Real, R: Representation<T> + ?Sized>(rep: &R, l: Letter) -> GroupElement<T> {
    let g = rep.image(l.generator).expect("checked word");
    if l.inverse {
        g.inv()
    } else {
        g.clone()
    }
}

/// Image of a word under the representation.
pub fn evaluate_word<T: Real, R: Representation<T> + ?Sized>(rep: &R, w: &Word) -> Result<GroupElement<T>> {
    check_word(rep, w)?;
    let mut acc = GroupElement::identity(rep.descriptor());
    for &l in &w.letters {
        acc = acc.mul(&letter_image(rep, l));
    }
    Ok(acc)
}

/// Value of a generator assignment extended to a word by the cocycle rule
/// `φ(xy) = φ(x) + Ad(x)·φ(y)`, `φ(x⁻¹) = −Ad(x⁻¹)·φ(x)`.
pub fn evaluate_cocycle<T: Real, R: Representation<T> + ?Sized>(rep: &R, phi: &Cocycle<T>, w: &Word) -> Result<LieVector<T>> {
    check_word(rep, w)?;
    phi.check_shape(rep)?;
    let desc = rep.descriptor();
    let mut acc = LieVector::zero(desc);
    let mut prefix = GroupElement::identity(desc);
    for &l in &w.letters {
        let slot = rep.slot(l.generator).expect("checked word");
        let x = letter_image(rep, l);
        let value = &phi.values()[slot];
        let term = if l.inverse { value.ad_by(&prefix.mul(&x)).neg() } else { value.ad_by(&prefix) };
        acc = acc.add(&term);
        prefix = prefix.mul(&x);
    }
    Ok(acc)
}

/// `Z`-linear extension of [`evaluate_cocycle`] to the group ring.
pub fn evaluate_cocycle_ring<T: Real, R: Representation<T> + ?Sized>(
    rep: &R,
    phi: &Cocycle<T>,
    x: &GroupRingElement,
) -> Result<LieVector<T>> {
    let mut acc = LieVector::zero(rep.descriptor());
    for (c, w) in &x.terms {
        let v = evaluate_cocycle(rep, phi, w)?;
        acc = acc.add(&v.scale(nalgebra::Complex::new(lit::<T>(*c as f64), T::zero())));
    }
    Ok(acc)
}

/// `Ad_ρ(x)·v` for a group-ring element, acting term by term.
pub fn ad_ring<T: Real, R: Representation<T> + ?Sized>(rep: &R, x: &GroupRingElement, v: &LieVector<T>) -> Result<LieVector<T>> {
    let mut acc = LieVector::zero(rep.descriptor());
    for (c, w) in &x.terms {
        let g = evaluate_word(rep, w)?;
        acc = acc.add(&v.ad_by(&g).scale(nalgebra::Complex::new(lit::<T>(*c as f64), T::zero())));
    }
    Ok(acc)
}
