//! Seifert invariants of star-shaped plumbings and of the open books with
//! boundary-parallel twist monodromy.
//!
//! Sign convention: invariants are read from the reduced plumbing (every leg
//! weight at most `-2`). The central weight is `e0`, a leg with weights
//! `-a_1, …, -a_s` (outward) has `α/β = [a_1, …, a_s]⁻` and
//!
//! ```text
//! e = e0 + Σ β_i / α_i,
//! ```
//!
//! so the manifold is a singularity link exactly when `e < 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmat::{smith_normal_form, IntMatrix};
use crate::plumbing::{BoundaryHomology, PlumbingGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeifertError {
    #[error("graph is not star-shaped")]
    NotStar,
    #[error("leg vertex {vertex} has weight {weight}; reduced legs need weight <= -2")]
    LegWeight { vertex: VertexId, weight: i64 },
    #[error("leg vertex {vertex} has positive genus")]
    LegGenus { vertex: VertexId },
    #[error("invalid leg ({alpha}, {beta}): need 0 < beta < alpha, coprime")]
    InvalidLeg { alpha: i64, beta: i64 },
    #[error("continued fraction overflow")]
    Overflow,
    #[error("open book needs at least one boundary component")]
    NoBoundary,
    #[error("twist power p_{index} = {value} must be positive")]
    NonPositivePower { index: usize, value: i64 },
}

/// One exceptional fiber, `0 < beta < alpha`, `gcd = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SeifertLeg {
    pub alpha: i64,
    pub beta: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertData {
    pub base_genus: u32,
    pub e0: i64,
    /// Sorted ascending; this is the normal form used for equality.
    pub legs: Vec<SeifertLeg>,
    #[serde(with = "crate::bigjson::rational")]
    pub euler_number: BigRational,
}

impl SeifertData {
    /// Normalizes leg order and computes the rational Euler number.
    pub fn new(base_genus: u32, e0: i64, mut legs: Vec<SeifertLeg>) -> Result<Self, SeifertError> {
        for l in &legs {
            if !(0 < l.beta && l.beta < l.alpha) || num_integer::gcd(l.alpha, l.beta) != 1 {
                return Err(SeifertError::InvalidLeg { alpha: l.alpha, beta: l.beta });
            }
        }
        legs.sort();
        let euler_number = euler_from_parts(e0, &legs);
        Ok(SeifertData { base_genus, e0, legs, euler_number })
    }

    /// True when the stored Euler number agrees with `e0` and the legs.
    pub fn is_consistent(&self) -> bool {
        self.euler_number == euler_from_parts(self.e0, &self.legs)
    }
}

fn euler_from_parts(e0: i64, legs: &[SeifertLeg]) -> BigRational {
    legs.iter().fold(BigRational::from_integer(e0.into()), |acc, l| {
        acc + BigRational::new(l.beta.into(), l.alpha.into())
    })
}

/// `α/β = a_1 - 1/(a_2 - 1/(… - 1/a_s))` for `a_j >= 2`.
pub fn negative_continued_fraction(a: &[i64]) -> Result<(i64, i64), SeifertError> {
    let (&last, rest) = a.split_last().ok_or(SeifertError::Overflow)?;
    let (mut num, mut den) = (last, 1i64);
    for &aj in rest.iter().rev() {
        let next = aj.checked_mul(num).and_then(|x| x.checked_sub(den)).ok_or(SeifertError::Overflow)?;
        den = num;
        num = next;
    }
    Ok((num, den))
}

/// Expands `α/β > 1` back into its negative continued fraction.
pub fn expand_negative_continued_fraction(alpha: i64, beta: i64) -> Vec<i64> {
    let (mut p, mut q) = (alpha, beta);
    let mut out = Vec::new();
    while q > 0 {
        // a = ceil(p/q); p/q = a - q'/q with q' = a*q - p in [0, q)
        let a = (p + q - 1) / q;
        out.push(a);
        let r = a * q - p;
        p = q;
        q = r;
    }
    out
}

/// Seifert invariants of a reduced star plumbing (legs all `<= -2`).
pub fn star_to_seifert(g: &PlumbingGraph) -> Result<SeifertData, SeifertError> {
    let center = g.star_center().ok_or(SeifertError::NotStar)?;
    let c = g.vertex(center).ok_or(SeifertError::NotStar)?;
    let legs = g.legs_from(center).ok_or(SeifertError::NotStar)?;
    let mut out = Vec::with_capacity(legs.len());
    for leg in legs {
        let mut a = Vec::with_capacity(leg.len());
        for v in &leg {
            if v.weight > -2 {
                return Err(SeifertError::LegWeight { vertex: v.id, weight: v.weight });
            }
            if v.genus != 0 {
                return Err(SeifertError::LegGenus { vertex: v.id });
            }
            a.push(-v.weight);
        }
        let (alpha, beta) = negative_continued_fraction(&a)?;
        out.push(SeifertLeg { alpha, beta });
    }
    SeifertData::new(c.genus, c.weight, out)
}

pub fn euler_number(s: &SeifertData) -> BigRational {
    euler_from_parts(s.e0, &s.legs)
}

/// Neumann's criterion: a Seifert fibered space over an orientable base is
/// a singularity link iff its Euler number is negative.
pub fn is_singularity_link(s: &SeifertData) -> bool {
    euler_number(s).is_negative()
}

/// Flags recording the cited classification of the Milnor fillable contact
/// structure. No contact structure is represented; both flags are the sign
/// test on `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContactFlags {
    pub milnor_fillable: bool,
    pub unique_transverse_invariant_class: bool,
}

pub fn canonical_contact_flag(s: &SeifertData) -> ContactFlags {
    let link = is_singularity_link(s);
    ContactFlags { milnor_fillable: link, unique_transverse_invariant_class: link }
}

/// Open book with page `Σ_{h,r}` and monodromy `t_1^{p_1} ⋯ t_r^{p_r}`,
/// `t_i` the right-handed twist parallel to the `i`-th boundary component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenBookDesc {
    pub page_genus: u32,
    pub powers: Vec<i64>,
}

impl OpenBookDesc {
    pub fn new(page_genus: u32, powers: Vec<i64>) -> Result<Self, SeifertError> {
        let ob = OpenBookDesc { page_genus, powers };
        ob.validate()?;
        Ok(ob)
    }

    pub fn validate(&self) -> Result<(), SeifertError> {
        if self.powers.is_empty() {
            return Err(SeifertError::NoBoundary);
        }
        if let Some((i, &v)) = self.powers.iter().enumerate().find(|(_, &v)| v < 1) {
            return Err(SeifertError::NonPositivePower { index: i + 1, value: v });
        }
        Ok(())
    }

    pub fn boundary_count(&self) -> usize {
        self.powers.len()
    }
}

/// Seifert data of the open-book manifold `Y_{h,p}`: `e0 = -r`, a leg
/// `(p, p-1)` for each `p >= 2`; `p = 1` contributes no leg.
pub fn openbook_manifold(ob: &OpenBookDesc) -> Result<SeifertData, SeifertError> {
    ob.validate()?;
    let legs = ob
        .powers
        .iter()
        .filter(|&&p| p >= 2)
        .map(|&p| SeifertLeg { alpha: p, beta: p - 1 })
        .collect();
    SeifertData::new(ob.page_genus, -(ob.powers.len() as i64), legs)
}

/// `H₁` of the open-book manifold, computed from the page and monodromy
/// alone.
///
/// `H₁(M) = coker(var)` where `var: H₁(Σ, ∂Σ) → H₁(Σ)` is the variation
/// `x ↦ φ(x) - x`. With page basis `a_1, b_1, …, a_h, b_h, d_1, …, d_{r-1}`
/// (`d_i` the boundary classes, `d_r = -Σ d_i`) and relative basis the same
/// closed curves plus arcs `c_j` from boundary `j` to boundary `r`, the
/// boundary twists give `var(c_j) = p_j d_j - p_r d_r` and vanish on closed
/// curves.
pub fn openbook_homology(ob: &OpenBookDesc) -> Result<BoundaryHomology, SeifertError> {
    ob.validate()?;
    let h = ob.page_genus as usize;
    let r = ob.powers.len();
    let n = 2 * h + r - 1;
    let p_last = ob.powers[r - 1];
    // Columns are images of relative basis elements.
    let var = IntMatrix::from_fn(n, n, |row, col| {
        if row < 2 * h || col < 2 * h {
            return BigInt::zero();
        }
        let (i, j) = (row - 2 * h, col - 2 * h);
        let own = if i == j { ob.powers[j] } else { 0 };
        BigInt::from(own + p_last)
    });
    let snf = smith_normal_form(&var);
    Ok(BoundaryHomology { rank: snf.cokernel_free_rank(), torsion: snf.torsion() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plumbing::{boundary_homology, star_graph_left, star_graph_right, Vertex};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn leg(alpha: i64, beta: i64) -> SeifertLeg {
        SeifertLeg { alpha, beta }
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(negative_continued_fraction(&[2]).unwrap(), (2, 1));
        assert_eq!(negative_continued_fraction(&[2, 2]).unwrap(), (3, 2));
        assert_eq!(negative_continued_fraction(&[2, 2, 2, 2, 2]).unwrap(), (6, 5));
        // 7/3 = 3 - 1/(2 - 1/2)... check: [3,2,2] = 3 - 1/(3/2) = 7/3
        assert_eq!(negative_continued_fraction(&[3, 2, 2]).unwrap(), (7, 3));
        assert_eq!(expand_negative_continued_fraction(7, 3), vec![3, 2, 2]);
        assert_eq!(expand_negative_continued_fraction(5, 4), vec![2, 2, 2, 2]);
    }

    #[test]
    fn star_to_seifert_examples() {
        for h in 0..4 {
            let s = star_to_seifert(&star_graph_right(h, &[2]).unwrap().0).unwrap();
            assert_eq!(s, SeifertData::new(h, -1, vec![leg(2, 1)]).unwrap());
            assert_eq!(s.euler_number, q(-1, 2));
        }
        let s = star_to_seifert(&star_graph_right(1, &[2, 3]).unwrap().0).unwrap();
        assert_eq!(s.e0, -2);
        assert_eq!(s.legs, vec![leg(2, 1), leg(3, 2)]);
        assert_eq!(s.euler_number, q(-5, 6));
        let bare = PlumbingGraph::new(vec![Vertex { id: 0, weight: -1, genus: 0 }], vec![]).unwrap();
        let s = star_to_seifert(&bare).unwrap();
        assert_eq!((s.base_genus, s.e0, s.legs.len()), (0, -1, 0));
        assert_eq!(s.euler_number, q(-1, 1));
    }

    #[test]
    fn star_to_seifert_general_leg() {
        let g = PlumbingGraph::new(
            vec![
                Vertex { id: 0, weight: -1, genus: 2 },
                Vertex { id: 1, weight: -3, genus: 0 },
                Vertex { id: 2, weight: -2, genus: 0 },
                Vertex { id: 3, weight: -5, genus: 0 },
            ],
            vec![(0, 1), (1, 2), (0, 3)],
        )
        .unwrap();
        let s = star_to_seifert(&g).unwrap();
        assert_eq!(s.legs, vec![leg(5, 1), leg(5, 2)]);
        assert_eq!(s.euler_number, q(-1, 1) + q(1, 5) + q(2, 5));
    }

    #[test]
    fn star_to_seifert_errors() {
        assert!(matches!(
            star_to_seifert(&star_graph_left(1, &[2]).unwrap()),
            Err(SeifertError::LegWeight { vertex: 1, weight: 2 })
        ));
        let two_branches = PlumbingGraph::new(
            (0..8).map(|id| Vertex { id, weight: -2, genus: 0 }).collect(),
            vec![(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (4, 6), (6, 7)],
        )
        .unwrap();
        assert_eq!(star_to_seifert(&two_branches), Err(SeifertError::NotStar));
    }

    #[test]
    fn euler_number_examples() {
        for p in 2..=7i64 {
            for p2 in 2..=7i64 {
                let s = star_to_seifert(&star_graph_right(0, &[p, p2]).unwrap().0).unwrap();
                assert_eq!(euler_number(&s), -(q(1, p) + q(1, p2)));
            }
        }
        let trivial = SeifertData::new(3, 0, vec![]).unwrap();
        assert!(euler_number(&trivial).is_zero());
    }

    #[test]
    fn singularity_link_and_contact_flags() {
        let y = openbook_manifold(&OpenBookDesc::new(4, vec![2]).unwrap()).unwrap();
        assert!(is_singularity_link(&y));
        assert_eq!(
            canonical_contact_flag(&y),
            ContactFlags { milnor_fillable: true, unique_transverse_invariant_class: true }
        );
        let product = SeifertData::new(2, 0, vec![]).unwrap();
        assert!(!is_singularity_link(&product));
        assert!(!canonical_contact_flag(&product).milnor_fillable);
        assert!(!is_singularity_link(&SeifertData::new(0, 1, vec![]).unwrap()));
        let y23 = openbook_manifold(&OpenBookDesc::new(1, vec![2, 3]).unwrap()).unwrap();
        assert_eq!(y23.euler_number, q(-5, 6));
        assert!(canonical_contact_flag(&y23).unique_transverse_invariant_class);
    }

    #[test]
    fn openbook_manifold_examples() {
        let ob = OpenBookDesc::new(3, vec![2]).unwrap();
        assert_eq!(openbook_manifold(&ob).unwrap(), SeifertData::new(3, -1, vec![leg(2, 1)]).unwrap());
        let ob = OpenBookDesc::new(3, vec![2, 3]).unwrap();
        assert_eq!(
            openbook_manifold(&ob).unwrap(),
            star_to_seifert(&star_graph_right(3, &[2, 3]).unwrap().0).unwrap()
        );
        let s3 = OpenBookDesc::new(0, vec![1]).unwrap();
        assert_eq!(openbook_manifold(&s3).unwrap(), SeifertData::new(0, -1, vec![]).unwrap());
    }

    #[test]
    fn openbook_validation() {
        assert_eq!(OpenBookDesc::new(1, vec![]), Err(SeifertError::NoBoundary));
        assert_eq!(
            OpenBookDesc::new(1, vec![2, 0]),
            Err(SeifertError::NonPositivePower { index: 2, value: 0 })
        );
        let json = r#"{"page_genus":2,"powers":[2,3]}"#;
        let ob: OpenBookDesc = serde_json::from_str(json).unwrap();
        assert_eq!(ob, OpenBookDesc::new(2, vec![2, 3]).unwrap());
    }

    #[test]
    fn openbook_homology_examples() {
        for h in 0..4u32 {
            let got = openbook_homology(&OpenBookDesc::new(h, vec![2]).unwrap()).unwrap();
            assert_eq!(got, boundary_homology(&star_graph_left(h, &[2]).unwrap()));
            assert_eq!(got.rank, 2 * h as usize);
        }
        let s3 = openbook_homology(&OpenBookDesc::new(0, vec![1]).unwrap()).unwrap();
        assert_eq!(s3, BoundaryHomology { rank: 0, torsion: vec![] });
        let d4 = openbook_homology(&OpenBookDesc::new(0, vec![2, 2]).unwrap()).unwrap();
        assert_eq!(d4, BoundaryHomology { rank: 0, torsion: vec![BigInt::from(4)] });
        assert_eq!(d4, boundary_homology(&star_graph_right(0, &[2, 2]).unwrap().0));
        // S³ plumbing oracle: [[0,1],[1,1]]
        assert_eq!(s3, boundary_homology(&star_graph_left(0, &[1]).unwrap()));
    }

    #[test]
    fn seifert_leg_validation() {
        assert!(SeifertData::new(0, 0, vec![leg(4, 2)]).is_err());
        assert!(SeifertData::new(0, 0, vec![leg(3, 3)]).is_err());
        let s = SeifertData::new(0, -2, vec![leg(5, 2), leg(2, 1)]).unwrap();
        assert_eq!(s.legs, vec![leg(2, 1), leg(5, 2)]);
        assert!(s.is_consistent());
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.contains(r#""euler_number":"-11/10""#), "{json}");
        let back: SeifertData = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
