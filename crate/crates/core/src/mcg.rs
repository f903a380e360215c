//! Dehn twist words and their action on first homology.
//!
//! Basis of `H₁(Σ_{g,r})`: `a_1, b_1, …, a_g, b_g, d_1, …, d_{r-1}` with
//! `a_i · b_i = 1` and the boundary classes `d_j` in the radical of the
//! pairing. A right-handed twist along `c` acts by the transvection
//!
//! ```text
//! T_c(x) = x + (c · x) c,
//! ```
//!
//! so `T_{a_1}(b_1) = b_1 + a_1`. Words act left letter first: the matrix of
//! `l_1 l_2 ⋯ l_n` is `T_{l_n} ⋯ T_{l_1}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmat::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McgError {
    #[error("curve {name} has {got} coefficients, surface H1 has rank {expected}")]
    Dimension { name: String, got: usize, expected: usize },
    #[error("curve {0} is not in the curve table")]
    UnresolvedCurve(String),
    #[error("word has no homology data (counting-only); supply a curve table")]
    CountingOnly,
    #[error("word parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("chain check failed: <{0}, {1}> = {2}")]
    Chain(String, String, i64),
    #[error("homology class has length {got}, expected {expected}")]
    ClassLength { got: usize, expected: usize },
    #[error("genus must be at least {min}, got {got}")]
    Genus { min: u32, got: u32 },
    #[error("invalid curve table: {0}")]
    CurveTable(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub genus: u32,
    pub boundary_count: u32,
}

impl SurfaceSpec {
    pub fn closed(genus: u32) -> Self {
        SurfaceSpec { genus, boundary_count: 0 }
    }

    pub fn h1_rank(&self) -> usize {
        2 * self.genus as usize + (self.boundary_count as usize).saturating_sub(1)
    }

    /// The intersection pairing on `H₁` in the fixed basis.
    pub fn intersection_form(&self) -> IntMatrix {
        let g = self.genus as usize;
        IntMatrix::from_fn(self.h1_rank(), self.h1_rank(), |i, j| {
            if i < 2 * g && j < 2 * g && i / 2 == j / 2 && i != j {
                BigInt::from(if i % 2 == 0 { 1 } else { -1 })
            } else {
                BigInt::zero()
            }
        })
    }

    /// Algebraic intersection `x · y`.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        let g = self.genus as usize;
        (0..g).map(|i| x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i]).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Curve {
    pub name: String,
    pub homology_class: Vec<i64>,
    #[serde(default = "yes")]
    pub simple: bool,
}

fn yes() -> bool {
    true
}

impl Curve {
    pub fn new(name: impl Into<String>, homology_class: Vec<i64>) -> Self {
        Curve { name: name.into(), homology_class, simple: true }
    }

    fn check(&self, s: &SurfaceSpec) -> Result<(), McgError> {
        if self.homology_class.len() != s.h1_rank() {
            return Err(McgError::Dimension {
                name: self.name.clone(),
                got: self.homology_class.len(),
                expected: s.h1_rank(),
            });
        }
        Ok(())
    }
}

/// `T_c^n = I + n · c cᵀ J`; the nilpotent part squares to zero because
/// `c · c = 0`.
pub fn transvection_power(c: &Curve, s: &SurfaceSpec, n: i64) -> Result<IntMatrix, McgError> {
    c.check(s)?;
    let j = s.intersection_form();
    let dim = s.h1_rank();
    // row vector cᵀ J
    let cj: Vec<BigInt> = (0..dim)
        .map(|col| (0..dim).map(|k| BigInt::from(c.homology_class[k]) * &j[(k, col)]).sum())
        .collect();
    Ok(IntMatrix::from_fn(dim, dim, |row, col| {
        let base = if row == col { BigInt::one() } else { BigInt::zero() };
        base + BigInt::from(n) * BigInt::from(c.homology_class[row]) * &cj[col]
    }))
}

pub fn transvection(c: &Curve, s: &SurfaceSpec) -> Result<IntMatrix, McgError> {
    transvection_power(c, s, 1)
}

pub fn transvection_inverse(c: &Curve, s: &SurfaceSpec) -> Result<IntMatrix, McgError> {
    transvection_power(c, s, -1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Letter {
    pub curve: String,
    pub exponent: i64,
}

impl Letter {
    pub fn new(curve: impl Into<String>, exponent: i64) -> Self {
        Letter { curve: curve.into(), exponent }
    }
}

/// A word in powered Dehn twists. `curves = None` marks a counting-only word
/// whose curve classes are unknown.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistWord {
    pub surface: SurfaceSpec,
    pub letters: Vec<Letter>,
    pub curves: Option<BTreeMap<String, Curve>>,
}

impl TwistWord {
    /// Validates that every letter resolves and every class has the right length.
    pub fn new(
        surface: SurfaceSpec,
        letters: Vec<Letter>,
        curves: Option<BTreeMap<String, Curve>>,
    ) -> Result<Self, McgError> {
        if let Some(table) = &curves {
            for c in table.values() {
                c.check(&surface)?;
            }
            if let Some(l) = letters.iter().find(|l| !table.contains_key(&l.curve)) {
                return Err(McgError::UnresolvedCurve(l.curve.clone()));
            }
        }
        Ok(TwistWord { surface, letters, curves })
    }

    /// Number of Dehn twists, `Σ |exponent|`.
    pub fn letter_count(&self) -> u64 {
        self.letters.iter().map(|l| l.exponent.unsigned_abs()).sum()
    }

    pub fn has_homology(&self) -> bool {
        self.curves.is_some()
    }

    /// Concatenation `self · other` on the same surface and curve table.
    pub fn concat(&self, other: &TwistWord) -> TwistWord {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        TwistWord { surface: self.surface, letters, curves: self.curves.clone() }
    }

    pub fn power(&self, n: usize) -> TwistWord {
        let letters = (0..n).flat_map(|_| self.letters.iter().cloned()).collect();
        TwistWord { surface: self.surface, letters, curves: self.curves.clone() }
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| if l.exponent == 1 { l.curve.clone() } else { format!("{}^{}", l.curve, l.exponent) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Matrix of the word acting on `H₁`.
pub fn word_action(w: &TwistWord) -> Result<IntMatrix, McgError> {
    let table = w.curves.as_ref().ok_or(McgError::CountingOnly)?;
    let mut acc = IntMatrix::identity(w.surface.h1_rank());
    for l in &w.letters {
        let c = table.get(&l.curve).ok_or_else(|| McgError::UnresolvedCurve(l.curve.clone()))?;
        acc = &transvection_power(c, &w.surface, l.exponent)? * &acc;
    }
    Ok(acc)
}

/// Parses the word language: identifiers separated by whitespace, `^n`
/// powers (negative allowed) on letters or parenthesized groups.
///
/// `c1 c2 (c3 c4)^2 c5^-1`
pub fn parse_word(src: &str) -> Result<Vec<Letter>, McgError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let letters = p.sequence()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected input"));
    }
    Ok(letters)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> McgError {
        McgError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_whitespace() || self.src[self.pos] == b'#') {
            if self.src[self.pos] == b'#' {
                while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                self.pos += 1;
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sequence(&mut self) -> Result<Vec<Letter>, McgError> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            if c == b')' {
                break;
            }
            out.extend(self.item()?);
        }
        Ok(out)
    }

    fn item(&mut self) -> Result<Vec<Letter>, McgError> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sequence()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                inner
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                vec![Letter::new(name, 1)]
            }
            _ => return Err(self.err("expected a curve name or '('")),
        };
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let n = self.integer()?;
        Ok(power_letters(&base, n))
    }

    fn integer(&mut self) -> Result<i64, McgError> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| McgError::Parse { pos: start, msg: "expected an integer exponent".into() })
    }
}

fn power_letters(base: &[Letter], n: i64) -> Vec<Letter> {
    if let [single] = base {
        return if n == 0 { vec![] } else { vec![Letter::new(single.curve.clone(), single.exponent * n)] };
    }
    let unit: Vec<Letter> = if n >= 0 {
        base.to_vec()
    } else {
        base.iter().rev().map(|l| Letter::new(l.curve.clone(), -l.exponent)).collect()
    };
    (0..n.unsigned_abs()).flat_map(|_| unit.iter().cloned()).collect()
}

/// Parses a curve-data file `{name: [coefficients]}`.
pub fn parse_curve_table(json: &str) -> Result<BTreeMap<String, Curve>, McgError> {
    let raw: BTreeMap<String, Vec<i64>> =
        serde_json::from_str(json).map_err(|e| McgError::CurveTable(e.to_string()))?;
    Ok(raw.into_iter().map(|(name, class)| (name.clone(), Curve::new(name, class))).collect())
}

fn unit(dim: usize, idx: usize, sign: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[idx] = sign;
    v
}

/// Homology classes of the standard chain `c_1, …, c_{2g+1}` on `Σ_g`:
/// `c_{2i} = b_i`, `c_1 = a_1`, `c_{2i+1} = a_{i+1} - a_i`, `c_{2g+1} = -a_g`.
/// Adjacent curves meet once, the rest are disjoint, and the odd classes
/// sum to zero.
pub fn chain_curves(g: u32) -> BTreeMap<String, Curve> {
    let s = SurfaceSpec::closed(g);
    let dim = s.h1_rank();
    let g = g as usize;
    let mut out = BTreeMap::new();
    for k in 1..=2 * g + 1 {
        let class = if k % 2 == 0 {
            unit(dim, 2 * (k / 2 - 1) + 1, 1)
        } else if k == 1 {
            unit(dim, 0, 1)
        } else if k == 2 * g + 1 {
            unit(dim, 2 * (g - 1), -1)
        } else {
            let i = (k - 1) / 2; // c_{2i+1} = a_{i+1} - a_i
            let mut v = unit(dim, 2 * i, 1);
            v[2 * (i - 1)] = -1;
            v
        };
        let name = format!("c{k}");
        out.insert(name.clone(), Curve::new(name, class));
    }
    out
}

/// `⟨c_i, c_{i+1}⟩ = ±1` and `⟨c_i, c_j⟩ = 0` for `|i - j| >= 2`.
pub fn check_chain(table: &BTreeMap<String, Curve>, s: &SurfaceSpec, names: &[String]) -> Result<(), McgError> {
    for (i, a) in names.iter().enumerate() {
        for (j, b) in names.iter().enumerate().skip(i + 1) {
            let ca = table.get(a).ok_or_else(|| McgError::UnresolvedCurve(a.clone()))?;
            let cb = table.get(b).ok_or_else(|| McgError::UnresolvedCurve(b.clone()))?;
            let v = s.pairing(&ca.homology_class, &cb.homology_class);
            let ok = if j == i + 1 { v.abs() == 1 } else { v == 0 };
            if !ok {
                return Err(McgError::Chain(a.clone(), b.clone(), v));
            }
        }
    }
    Ok(())
}

/// `c_1 c_2 ⋯ c_{2g} c_{2g+1}² c_{2g} ⋯ c_1`, the hyperelliptic involution.
pub fn hyperelliptic_half_word(g: u32) -> Result<TwistWord, McgError> {
    if g < 1 {
        return Err(McgError::Genus { min: 1, got: g });
    }
    let top = 2 * g + 1;
    let mut letters: Vec<Letter> = (1..top).map(|k| Letter::new(format!("c{k}"), 1)).collect();
    letters.push(Letter::new(format!("c{top}"), 2));
    letters.extend((1..top).rev().map(|k| Letter::new(format!("c{k}"), 1)));
    TwistWord::new(SurfaceSpec::closed(g), letters, Some(chain_curves(g)))
}

/// The square of the half word: the global monodromy of the hyperelliptic
/// genus-`g` Lefschetz fibration on `CP² # (4g+5) CP²‾`, `8g + 4` twists.
pub fn hyperelliptic_word(g: u32) -> Result<TwistWord, McgError> {
    Ok(hyperelliptic_half_word(g)?.power(2))
}

/// `(b_0 b_1 ⋯ b_g a² b²)²` on `Σ_g`, `g = 2m + 1`: `2g + 10` twists.
/// Without a curve table the word is counting-only.
pub fn korkmaz_word(m: u32, curves: Option<BTreeMap<String, Curve>>) -> Result<TwistWord, McgError> {
    if m < 1 {
        return Err(McgError::Genus { min: 1, got: m });
    }
    let g = 2 * m + 1;
    let mut half: Vec<Letter> = (0..=g).map(|i| Letter::new(format!("b{i}"), 1)).collect();
    half.push(Letter::new("a", 2));
    half.push(Letter::new("b", 2));
    let letters = [half.clone(), half].concat();
    TwistWord::new(SurfaceSpec::closed(g), letters, curves)
}

/// `χ = 4 - 4g + n` for a genus-`g` Lefschetz fibration over `S²` with `n`
/// singular fibers.
pub fn lf_euler_characteristic(g: u32, n: u64) -> i64 {
    4 - 4 * i64::from(g) + n as i64
}

/// A class in `H₂(CP² # (4g+5) CP²‾)` in the basis `h, e_1, …, e_{4g+5}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyClassX {
    pub coeffs: Vec<i64>,
}

impl HomologyClassX {
    pub fn dimension(g: u32) -> usize {
        4 * g as usize + 6
    }

    pub fn line(g: u32) -> Self {
        HomologyClassX { coeffs: unit(Self::dimension(g), 0, 1) }
    }

    /// Exceptional class `e_i`, `1 <= i <= 4g+5`.
    pub fn exceptional(g: u32, i: usize) -> Self {
        assert!((1..Self::dimension(g)).contains(&i), "e_{i} out of range");
        HomologyClassX { coeffs: unit(Self::dimension(g), i, 1) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        HomologyClassX { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }
}

/// `[F] = (g+2)h - g e_1 - e_2 - ⋯ - e_{4g+5}`.
pub fn fiber_class(g: u32) -> Result<HomologyClassX, McgError> {
    if g < 1 {
        return Err(McgError::Genus { min: 1, got: g });
    }
    let mut coeffs = vec![-1; HomologyClassX::dimension(g)];
    coeffs[0] = i64::from(g) + 2;
    coeffs[1] = -i64::from(g);
    Ok(HomologyClassX { coeffs })
}

/// The diagonal form `diag(1, -1, …, -1)`.
pub fn pair(x: &HomologyClassX, y: &HomologyClassX) -> Result<i64, McgError> {
    if x.coeffs.len() != y.coeffs.len() {
        return Err(McgError::ClassLength { got: y.coeffs.len(), expected: x.coeffs.len() });
    }
    Ok(x.coeffs
        .iter()
        .zip(&y.coeffs)
        .enumerate()
        .map(|(i, (a, b))| if i == 0 { a * b } else { -a * b })
        .sum())
}

/// Number of disjoint `(-1)`-sphere sections `e_2, …, e_{4g+5}`.
pub fn section_count(g: u32) -> Result<u32, McgError> {
    if g < 1 {
        return Err(McgError::Genus { min: 1, got: g });
    }
    Ok(4 * g + 4)
}

pub fn section_classes(g: u32) -> Result<Vec<HomologyClassX>, McgError> {
    let n = section_count(g)? as usize;
    Ok((2..2 + n).map(|i| HomologyClassX::exceptional(g, i)).collect())
}
