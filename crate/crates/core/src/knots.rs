//! Seifert matrices of knots, Alexander polynomials, and fibered-family
//! bookkeeping.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmat::{determinant, IntMatrix, MatrixError};
use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("Seifert matrix of {name} must be square with even size, got {rows}x{cols}")]
    Shape { name: String, rows: usize, cols: usize },
    #[error("Seifert matrix of {name} has det(V - V^T) = {det}, expected 1")]
    Pairing { name: String, det: BigInt },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Seifert matrix `V` of a knot: `V - Vᵀ` is the (unimodular) intersection
/// form of the Seifert surface, so `det(V - Vᵀ) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeifertMatrixK {
    name: String,
    matrix: IntMatrix,
}

#[derive(Deserialize)]
struct RawSeifert {
    name: String,
    matrix: IntMatrix,
}

impl<'de> Deserialize<'de> for SeifertMatrixK {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawSeifert::deserialize(d)?;
        SeifertMatrixK::new(raw.name, raw.matrix).map_err(serde::de::Error::custom)
    }
}

impl SeifertMatrixK {
    pub fn new(name: impl Into<String>, matrix: IntMatrix) -> Result<Self, KnotError> {
        let name = name.into();
        if !matrix.is_square() || !matrix.rows().is_multiple_of(2) {
            return Err(KnotError::Shape { name, rows: matrix.rows(), cols: matrix.cols() });
        }
        let det = determinant(&matrix.sub(&matrix.transpose())?)?;
        if !det.is_one() {
            return Err(KnotError::Pairing { name, det });
        }
        Ok(SeifertMatrixK { name, matrix })
    }

    pub fn from_rows(name: &str, rows: &[Vec<i64>]) -> Result<Self, KnotError> {
        Self::new(name, IntMatrix::from_rows(rows)?)
    }

    pub fn unknot() -> Self {
        SeifertMatrixK { name: "unknot".into(), matrix: IntMatrix::zeros(0, 0) }
    }

    /// Right-handed trefoil.
    pub fn trefoil() -> Self {
        Self::from_rows("trefoil", &[vec![-1, 1], vec![0, -1]]).expect("valid")
    }

    pub fn figure_eight() -> Self {
        Self::from_rows("figure-eight", &[vec![1, 1], vec![0, -1]]).expect("valid")
    }

    /// Linear plumbing of Hopf bands with the given signs (`+1` positive
    /// band). An even number of bands bounds a knot; the surface is a fiber.
    pub fn hopf_chain(signs: &[i8]) -> Result<Self, KnotError> {
        let n = signs.len();
        let label: String = signs.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect();
        let m = IntMatrix::from_fn(n, n, |i, j| {
            if i == j {
                BigInt::from(-i64::from(signs[i].signum()))
            } else if j == i + 1 {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        });
        Self::new(format!("hopf-chain({label})"), m)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    /// Genus of the Seifert surface, `size / 2`.
    pub fn genus(&self) -> u32 {
        (self.matrix.rows() / 2) as u32
    }
}

/// Multiplies out `Π (t - x_j)` for the Newton basis.
fn newton_to_coeffs(nodes: &[BigRational], newton: &[BigRational]) -> Vec<BigRational> {
    // Horner in the Newton basis, from the top coefficient down.
    let mut poly: Vec<BigRational> = vec![BigRational::zero()];
    for k in (0..newton.len()).rev() {
        // poly = poly * (t - x_k) + newton[k]
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * &nodes[k];
        }
        next[0] += &newton[k];
        poly = next;
    }
    poly
}

/// `det(V - tVᵀ)` as an ordinary polynomial in `t`, by exact evaluation at
/// `t = 0, …, n` and Newton interpolation.
pub fn alexander_determinant(v: &SeifertMatrixK) -> LaurentPoly {
    let n = v.size();
    let vt = v.matrix.transpose();
    let nodes: Vec<BigRational> = (0..=n).map(|i| BigRational::from_integer(BigInt::from(i))).collect();
    let values: Vec<BigRational> = (0..=n)
        .map(|i| {
            let t = BigInt::from(i);
            let m = IntMatrix::from_fn(n, n, |a, b| &v.matrix[(a, b)] - &t * &vt[(a, b)]);
            BigRational::from_integer(determinant(&m).expect("square"))
        })
        .collect();
    // Divided differences.
    let mut table = values;
    let mut newton = vec![table[0].clone()];
    for level in 1..=n {
        table = (0..table.len() - 1)
            .map(|i| (&table[i + 1] - &table[i]) / (&nodes[i + level] - &nodes[i]))
            .collect();
        newton.push(table[0].clone());
    }
    let coeffs = newton_to_coeffs(&nodes, &newton);
    let ints: Vec<BigInt> = coeffs
        .into_iter()
        .map(|c| {
            assert!(c.is_integer(), "interpolated coefficient {c} is not integral");
            c.to_integer()
        })
        .collect();
    LaurentPoly::from_coeffs(0, &ints)
}

/// Alexander polynomial, normalized to the symmetric representative with
/// positive leading coefficient.
pub fn alexander(v: &SeifertMatrixK) -> LaurentPoly {
    alexander_determinant(v).normalized()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberedCertificate {
    pub passes: bool,
    pub monic: bool,
    pub full_span: bool,
    pub reasons: Vec<String>,
}

/// Necessary conditions for fiberedness: monic Alexander polynomial whose
/// span equals twice the Seifert genus. Passing does not prove the knot is
/// fibered.
pub fn fibered_certificate(v: &SeifertMatrixK) -> FiberedCertificate {
    let delta = alexander(v);
    let monic = delta.leading_coeff().is_some_and(|c| c.abs().is_one());
    let full_span = delta.span() == v.size() as i64;
    let mut reasons = Vec::new();
    if !monic {
        reasons.push(format!("leading coefficient of {delta} is not ±1"));
    }
    if !full_span {
        reasons.push(format!("span {} of {delta} differs from 2·genus = {}", delta.span(), v.size()));
    }
    FiberedCertificate { passes: monic && full_span, monic, full_span, reasons }
}

/// Block sum of Seifert matrices; genus adds and `Δ` multiplies.
pub fn connected_sum(a: &SeifertMatrixK, b: &SeifertMatrixK) -> SeifertMatrixK {
    SeifertMatrixK {
        name: format!("{} # {}", a.name, b.name),
        matrix: IntMatrix::direct_sum(&a.matrix, &b.matrix),
    }
}

/// `p(t) ↦ p(t²)`, the knot-surgery multiplier.
pub fn substitute_t_squared(p: &LaurentPoly) -> LaurentPoly {
    p.substitute_power(2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMember {
    pub name: String,
    pub genus: u32,
    pub alexander: LaurentPoly,
    pub fibered: FiberedCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub expected_genus: u32,
    pub members: Vec<FamilyMember>,
    pub genus_ok: bool,
    pub fibered_ok: bool,
    /// Index pairs with equal normalized Alexander polynomials.
    pub collisions: Vec<(usize, usize)>,
    pub pairs_checked: usize,
    pub passes: bool,
}

impl FamilyReport {
    pub fn distinct(&self) -> bool {
        self.collisions.is_empty()
    }
}

/// Checks genus, the fibered certificate, and pairwise distinctness of
/// Alexander polynomials across a family.
pub fn family_report(family: &[SeifertMatrixK], k: u32) -> FamilyReport {
    let members: Vec<FamilyMember> = family
        .iter()
        .map(|v| FamilyMember {
            name: v.name.clone(),
            genus: v.genus(),
            alexander: alexander(v),
            fibered: fibered_certificate(v),
        })
        .collect();
    let mut collisions = Vec::new();
    let mut pairs_checked = 0;
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            pairs_checked += 1;
            if members[i].alexander == members[j].alexander {
                collisions.push((i, j));
            }
        }
    }
    let genus_ok = members.iter().all(|m| m.genus == k);
    let fibered_ok = members.iter().all(|m| m.fibered.passes);
    let passes = !members.is_empty() && genus_ok && fibered_ok && collisions.is_empty();
    FamilyReport { expected_genus: k, members, genus_ok, fibered_ok, collisions, pairs_checked, passes }
}

const DEMO_FAMILY_GENUS2: &str = include_str!("../data/demo_family_genus2.json");

/// Five genus-2 fibered knots with pairwise distinct Alexander polynomials:
/// two connected sums of genus-1 fibered knots and three Hopf-band chains.
pub fn demo_family_genus2() -> Vec<SeifertMatrixK> {
    serde_json::from_str(DEMO_FAMILY_GENUS2).expect("bundled family parses")
}

/// A genus-`k` demo family of `size` members built from trefoil and
/// figure-eight blocks: the member with `j` figure-eight summands has
/// `Δ = Δ_T^{k-j} Δ_F^j`, so up to `k + 1` members are distinct.
pub fn block_family(k: u32, size: usize) -> Vec<SeifertMatrixK> {
    (0..size.min(k as usize + 1))
        .map(|j| {
            (0..k).fold(SeifertMatrixK::unknot(), |acc, i| {
                let block = if (i as usize) < j { SeifertMatrixK::figure_eight() } else { SeifertMatrixK::trefoil() };
                if acc.size() == 0 {
                    block
                } else {
                    connected_sum(&acc, &block)
                }
            })
        })
        .collect()
}
