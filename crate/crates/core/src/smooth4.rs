//! Invariant records of closed 4-manifolds and of their fiber-and-section
//! complements.
//!
//! A record tracks `χ`, `σ`, the Lefschetz fiber genus, disjoint sphere
//! sections and a relative Seiberg–Witten multiplier. The fundamental group
//! is never computed; it is a tag set by catalog rules that carry a citation
//! key. Every record keeps the construction tree that produced it, and
//! [`Provenance::replay`] rebuilds the record from that tree alone.

use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmat;
use crate::knots::{alexander, substitute_t_squared, SeifertMatrixK};
use crate::laurent::LaurentPoly;
use crate::mcg;
use crate::plumbing::{self, BoundaryHomology, PlumbingError};
use crate::seifert::{openbook_homology, openbook_manifold, OpenBookDesc, SeifertData, SeifertError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Smooth4Error {
    #[error("parameter {name} must be at least {min}, got {got}")]
    Parameter { name: &'static str, min: i64, got: i64 },
    #[error("fiber sum needs a fiber genus on both sides")]
    MissingFiberGenus,
    #[error("fiber genus mismatch: {0} vs {1}")]
    FiberGenusMismatch(u32, u32),
    #[error("knot surgery needs a fiber sum in the provenance (no embedded torus otherwise)")]
    MissingFiberSum,
    #[error("need {needed} sections of equal square, have {available}")]
    TooFewSections { needed: u32, available: u32 },
    #[error("sections have mixed squares {0:?}")]
    MixedSquares(Vec<i64>),
    #[error("sections must have negative square, got {0}")]
    NonNegativeSquare(i64),
    #[error("provenance node {0} does not produce a closed manifold")]
    NotClosed(&'static str),
    #[error("provenance does not end in an excision")]
    NotFilling,
    #[error(transparent)]
    Seifert(#[from] SeifertError),
    #[error(transparent)]
    Plumbing(#[from] PlumbingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Pi1Tag {
    Trivial,
    ZPlusZn { n: u32 },
    ProductSurface { m: u32 },
    Unknown,
}

impl fmt::Display for Pi1Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pi1Tag::Trivial => write!(f, "1"),
            Pi1Tag::ZPlusZn { n } => write!(f, "Z + Z/{n}"),
            Pi1Tag::ProductSurface { m } => write!(f, "pi1(Sigma_{m})"),
            Pi1Tag::Unknown => write!(f, "unknown"),
        }
    }
}

/// A catalog-assigned fundamental group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pi1 {
    pub tag: Pi1Tag,
    pub citation: Option<String>,
}

impl Pi1 {
    fn cited(tag: Pi1Tag, key: &str) -> Self {
        Pi1 { tag, citation: Some(key.to_string()) }
    }

    fn unknown() -> Self {
        Pi1 { tag: Pi1Tag::Unknown, citation: None }
    }
}

/// `count` disjoint sphere sections of self-intersection `square`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SectionGroup {
    pub square: i64,
    pub count: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Twist {
    Untwisted,
    NTwist(u32),
}

/// Construction tree of a record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Provenance {
    MakeXg1 { g: u32 },
    MakeW { m: u32 },
    FiberSum { left: Box<Provenance>, right: Box<Provenance>, twist: Twist },
    KnotSurgery { base: Box<Provenance>, knot: SeifertMatrixK, torus_null_homotopic: bool },
    Excise { base: Box<Provenance>, r: u32 },
}

impl Provenance {
    fn label(&self) -> &'static str {
        match self {
            Provenance::MakeXg1 { .. } => "make_x_g1",
            Provenance::MakeW { .. } => "make_w",
            Provenance::FiberSum { .. } => "fiber_sum",
            Provenance::KnotSurgery { .. } => "knot_surgery",
            Provenance::Excise { .. } => "excise",
        }
    }

    pub fn contains_fiber_sum(&self) -> bool {
        match self {
            Provenance::FiberSum { .. } => true,
            Provenance::KnotSurgery { base, .. } | Provenance::Excise { base, .. } => base.contains_fiber_sum(),
            Provenance::MakeXg1 { .. } | Provenance::MakeW { .. } => false,
        }
    }

    /// `Some((g, n))` when the tree is an untwisted sum of `n` copies of
    /// `X(g,1)` with nothing else applied.
    fn pure_x(&self) -> Option<(u32, u32)> {
        match self {
            Provenance::MakeXg1 { g } => Some((*g, 1)),
            Provenance::FiberSum { left, right, twist: Twist::Untwisted } => {
                let (g1, n1) = left.pure_x()?;
                let (g2, n2) = right.pure_x()?;
                (g1 == g2).then_some((g1, n1 + n2))
            }
            _ => None,
        }
    }

    /// Rebuilds a closed-manifold record.
    pub fn replay(&self) -> Result<ManifoldRecord, Smooth4Error> {
        match self {
            Provenance::MakeXg1 { g } => make_x_g1(*g),
            Provenance::MakeW { m } => make_w(*m),
            Provenance::FiberSum { left, right, twist } => fiber_sum(&left.replay()?, &right.replay()?, *twist),
            Provenance::KnotSurgery { base, knot, torus_null_homotopic } => {
                knot_surgery(&base.replay()?, knot, *torus_null_homotopic)
            }
            Provenance::Excise { .. } => Err(Smooth4Error::NotClosed(self.label())),
        }
    }

    /// Rebuilds a filling record; the root must be an excision.
    pub fn replay_filling(&self) -> Result<FillingRecord, Smooth4Error> {
        match self {
            Provenance::Excise { base, r } => Ok(excise_filling(&base.replay()?, *r)?.0),
            _ => Err(Smooth4Error::NotFilling),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldRecord {
    pub name: String,
    pub euler_char: i64,
    pub signature: i64,
    pub fiber_genus: Option<u32>,
    pub sections: Vec<SectionGroup>,
    pub pi1: Pi1,
    /// Relative SW multiplier; `1` at construction.
    pub sw_distinguisher: LaurentPoly,
    pub provenance: Provenance,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl ManifoldRecord {
    pub fn section_total(&self) -> u32 {
        self.sections.iter().map(|s| s.count).sum()
    }
}

fn check_min(name: &'static str, min: i64, got: i64) -> Result<(), Smooth4Error> {
    if got < min {
        return Err(Smooth4Error::Parameter { name, min, got });
    }
    Ok(())
}

/// `X(g,1) = CP² # (4g+5)CP²‾` with its hyperelliptic genus-`g` fibration.
pub fn make_x_g1(g: u32) -> Result<ManifoldRecord, Smooth4Error> {
    check_min("g", 1, g.into())?;
    let blowups = 4 * i64::from(g) + 5;
    Ok(ManifoldRecord {
        name: format!("X({g},1)"),
        euler_char: 3 + blowups,
        signature: 1 - blowups,
        fiber_genus: Some(g),
        sections: vec![SectionGroup { square: -1, count: 4 * g + 4 }],
        pi1: Pi1::cited(Pi1Tag::Trivial, "blowup-cp2"),
        sw_distinguisher: LaurentPoly::one(),
        provenance: Provenance::MakeXg1 { g },
        notes: vec![],
    })
}

/// `W(m) = Σ_m × S² # 8CP²‾` with its genus `2m+1` fibration.
pub fn make_w(m: u32) -> Result<ManifoldRecord, Smooth4Error> {
    check_min("m", 1, m.into())?;
    Ok(ManifoldRecord {
        name: format!("W({m})"),
        euler_char: (4 - 4 * i64::from(m)) + 8,
        signature: -8,
        fiber_genus: Some(2 * m + 1),
        sections: vec![SectionGroup { square: -1, count: 2 }],
        pi1: Pi1::cited(Pi1Tag::ProductSurface { m }, "product-pi1"),
        sw_distinguisher: LaurentPoly::one(),
        provenance: Provenance::MakeW { m },
        notes: vec![],
    })
}

/// Sections sewn pairwise: groups of equal square on both sides become one
/// group of doubled square, count the minimum. Unmatched groups are dropped.
fn sew_sections(a: &[SectionGroup], b: &[SectionGroup]) -> Vec<SectionGroup> {
    a.iter()
        .filter_map(|x| {
            b.iter()
                .find(|y| y.square == x.square)
                .map(|y| SectionGroup { square: x.square + y.square, count: x.count.min(y.count) })
        })
        .filter(|s| s.count > 0)
        .collect()
}

pub fn fiber_sum(m1: &ManifoldRecord, m2: &ManifoldRecord, twist: Twist) -> Result<ManifoldRecord, Smooth4Error> {
    let (Some(g1), Some(g2)) = (m1.fiber_genus, m2.fiber_genus) else {
        return Err(Smooth4Error::MissingFiberGenus);
    };
    if g1 != g2 {
        return Err(Smooth4Error::FiberGenusMismatch(g1, g2));
    }
    if let Twist::NTwist(n) = twist {
        check_min("n", 1, n.into())?;
    }
    let g = i64::from(g1);
    let sections = sew_sections(&m1.sections, &m2.sections);
    let provenance = Provenance::FiberSum {
        left: Box::new(m1.provenance.clone()),
        right: Box::new(m2.provenance.clone()),
        twist,
    };
    let twin_w = match (&m1.provenance, &m2.provenance) {
        (Provenance::MakeW { m: a }, Provenance::MakeW { m: b }) if a == b => Some(*a),
        _ => None,
    };
    let (name, pi1) = match (twist, twin_w) {
        (Twist::NTwist(n), Some(m)) => (format!("W_{n}({m})"), Pi1::cited(Pi1Tag::ZPlusZn { n }, "twisted-fiber-sum-pi1")),
        (Twist::Untwisted, _)
            if m1.pi1.tag == Pi1Tag::Trivial && m2.pi1.tag == Pi1Tag::Trivial && !sections.is_empty() =>
        {
            let name = match provenance.pure_x() {
                Some((g, n)) => format!("X({g},{n})"),
                None => format!("{} #_F {}", m1.name, m2.name),
            };
            (name, Pi1::cited(Pi1Tag::Trivial, "fiber-sum-simply-connected"))
        }
        (Twist::Untwisted, _) => (format!("{} #_F {}", m1.name, m2.name), Pi1::unknown()),
        (Twist::NTwist(n), None) => (format!("{} #_F^{n} {}", m1.name, m2.name), Pi1::unknown()),
    };
    Ok(ManifoldRecord {
        name,
        euler_char: m1.euler_char + m2.euler_char - 2 * (2 - 2 * g),
        signature: m1.signature + m2.signature,
        fiber_genus: Some(g1),
        sections,
        pi1,
        sw_distinguisher: LaurentPoly::one(),
        provenance,
        notes: vec!["distinguisher reset to 1 by the fiber sum".into()],
    })
}

/// Fintushel–Stern knot surgery along the torus built in the fiber sum.
pub fn knot_surgery(
    m: &ManifoldRecord,
    k: &SeifertMatrixK,
    torus_null_homotopic: bool,
) -> Result<ManifoldRecord, Smooth4Error> {
    if !m.provenance.contains_fiber_sum() {
        return Err(Smooth4Error::MissingFiberSum);
    }
    let multiplier = substitute_t_squared(&alexander(k));
    let pi1 = if torus_null_homotopic {
        Pi1 { tag: m.pi1.tag.clone(), citation: Some("knot-surgery-pi1".into()) }
    } else {
        Pi1::unknown()
    };
    let name = if k.size() == 0 { m.name.clone() } else { format!("{}_{{{}}}", m.name, k.name()) };
    Ok(ManifoldRecord {
        name,
        euler_char: m.euler_char,
        signature: m.signature,
        fiber_genus: m.fiber_genus.map(|g| g + 2 * k.genus()),
        sections: m.sections.clone(),
        pi1,
        sw_distinguisher: (&m.sw_distinguisher * &multiplier).normalized(),
        provenance: Provenance::KnotSurgery {
            base: Box::new(m.provenance.clone()),
            knot: k.clone(),
            torus_null_homotopic,
        },
        notes: m.notes.clone(),
    })
}

/// A boolean established by a cited catalog rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CitedFlag {
    pub value: bool,
    pub citation: Option<String>,
}

/// `det` of the intersection form when it is forced; `None` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetFlag {
    pub value: Option<i64>,
    pub justification: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillingRecord {
    pub record: ManifoldRecord,
    pub boundary: SeifertData,
    pub boundary_homology: BoundaryHomology,
    /// The page and monodromy of the boundary open book; `None` for `r = 0`.
    pub boundary_open_book: Option<OpenBookDesc>,
    pub stein_flag: CitedFlag,
    pub simply_connected: CitedFlag,
    pub det_intersection_form: DetFlag,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExciseWarning {
    /// `r = 0`: the complement of a fiber alone, outside the Stein pattern.
    NoSectionsRemoved,
}

/// Removes a regular fiber and `r` sections of square `-p`, keeping at
/// least one section.
///
/// `χ(V) = χ(M) - (2 - 2h) - r`, `σ(V) = σ(M) - σ(Z_{h,(p,…,p)})`, and the
/// boundary is the open-book manifold `Y_{h,(p,…,p)}`.
pub fn excise_filling(m: &ManifoldRecord, r: u32) -> Result<(FillingRecord, Vec<ExciseWarning>), Smooth4Error> {
    let h = m.fiber_genus.ok_or(Smooth4Error::MissingFiberGenus)?;
    let group = match m.sections.as_slice() {
        [one] => *one,
        [] => return Err(Smooth4Error::TooFewSections { needed: r + 1, available: 0 }),
        many => return Err(Smooth4Error::MixedSquares(many.iter().map(|s| s.square).collect())),
    };
    if group.square >= 0 {
        return Err(Smooth4Error::NonNegativeSquare(group.square));
    }
    if group.count < r + 1 {
        return Err(Smooth4Error::TooFewSections { needed: r + 1, available: group.count });
    }
    let p = -group.square;
    let mut warnings = Vec::new();

    let z_sig = if r == 0 {
        0 // single weight-0 vertex
    } else {
        let z = plumbing::z_graph(h, &vec![p; r as usize])?;
        exactmat::signature(&plumbing::intersection_matrix(&z)).expect("symmetric")
    };
    let euler_char = m.euler_char - (2 - 2 * i64::from(h)) - i64::from(r);
    let signature = m.signature - z_sig;

    let (boundary, boundary_homology, open_book) = if r == 0 {
        warnings.push(ExciseWarning::NoSectionsRemoved);
        // Σ_h × S¹: trivial circle bundle, H₁ = Z^{2h+1}
        let data = SeifertData::new(h, 0, vec![])?;
        (data, BoundaryHomology { rank: 2 * h as usize + 1, torsion: vec![] }, None)
    } else {
        let ob = OpenBookDesc::new(h, vec![p; r as usize])?;
        (openbook_manifold(&ob)?, openbook_homology(&ob)?, Some(ob))
    };

    let retained = SectionGroup { square: group.square, count: group.count - r };
    let simply_connected = if m.pi1.tag == Pi1Tag::Trivial && retained.count > 0 {
        CitedFlag { value: true, citation: Some("filling-simply-connected".into()) }
    } else {
        CitedFlag { value: false, citation: None }
    };
    let pi1 = match &m.pi1.tag {
        Pi1Tag::Trivial if simply_connected.value => Pi1::cited(Pi1Tag::Trivial, "filling-simply-connected"),
        Pi1Tag::ZPlusZn { n } if retained.count > 0 => Pi1::cited(Pi1Tag::ZPlusZn { n: *n }, "filling-pi1-z-zn"),
        _ => Pi1::unknown(),
    };
    let det = if boundary_homology.rank > 0 {
        DetFlag { value: Some(0), justification: "det-zero-infinite-h1".into() }
    } else {
        DetFlag { value: None, justification: "not determined".into() }
    };
    let stein_flag = if r >= 1 {
        CitedFlag { value: true, citation: Some("palf-stein-complement".into()) }
    } else {
        CitedFlag { value: false, citation: None }
    };

    let record = ManifoldRecord {
        name: format!("V[{}; r={r}]", m.name),
        euler_char,
        signature,
        fiber_genus: None,
        sections: vec![retained].into_iter().filter(|s| s.count > 0).collect(),
        pi1,
        sw_distinguisher: m.sw_distinguisher.clone(),
        provenance: Provenance::Excise { base: Box::new(m.provenance.clone()), r },
        notes: m.notes.clone(),
    };
    Ok((
        FillingRecord {
            record,
            boundary,
            boundary_homology,
            boundary_open_book: open_book,
            stein_flag,
            simply_connected,
            det_intersection_form: det,
        },
        warnings,
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinctnessReport {
    pub names: Vec<String>,
    pub pairs_checked: usize,
    pub collisions: Vec<(String, String)>,
    pub distinct: bool,
    pub verdict: String,
}

/// Pairwise comparison of normalized distinguishers.
pub fn distinguisher_distinct(family: &[&ManifoldRecord]) -> DistinctnessReport {
    let polys: Vec<LaurentPoly> = family.iter().map(|m| m.sw_distinguisher.normalized()).collect();
    let mut collisions = Vec::new();
    let mut pairs_checked = 0;
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            pairs_checked += 1;
            if polys[i] == polys[j] {
                collisions.push((family[i].name.clone(), family[j].name.clone()));
            }
        }
    }
    let distinct = !family.is_empty() && collisions.is_empty();
    let verdict = if family.is_empty() {
        "empty family".to_string()
    } else if distinct {
        "pairwise non-diffeomorphic (conditional on cited SW nonvanishing)".to_string()
    } else {
        format!("{} colliding pair(s)", collisions.len())
    };
    DistinctnessReport { names: family.iter().map(|m| m.name.clone()).collect(), pairs_checked, collisions, distinct, verdict }
}

/// The `χ` a Lefschetz fibration count predicts for `make_x_g1(g)`.
pub fn x_g1_lf_chi(g: u32) -> i64 {
    mcg::lf_euler_characteristic(g, 8 * u64::from(g) + 4)
}

/// The `χ` a Lefschetz fibration count predicts for `make_w(m)`.
pub fn w_lf_chi(m: u32) -> i64 {
    let g = 2 * u64::from(m) + 1;
    mcg::lf_euler_characteristic(g as u32, 2 * g + 10)
}

/// True when the boundary is a singularity link (negative Euler number).
pub fn boundary_is_link(f: &FillingRecord) -> bool {
    f.boundary.euler_number.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knots::demo_family_genus2;

    fn x2(g: u32) -> ManifoldRecord {
        let x = make_x_g1(g).unwrap();
        fiber_sum(&x, &x, Twist::Untwisted).unwrap()
    }

    #[test]
    fn base_records() {
        let x = make_x_g1(2).unwrap();
        assert_eq!((x.euler_char, x.signature), (16, -12));
        assert_eq!((make_x_g1(1).unwrap().euler_char, make_x_g1(1).unwrap().signature), (12, -8));
        assert_eq!(x.sections, vec![SectionGroup { square: -1, count: 12 }]);
        let w = make_w(1).unwrap();
        assert_eq!((w.euler_char, w.signature, w.fiber_genus), (8, -8, Some(3)));
        assert_eq!(make_w(2).unwrap().euler_char, 4);
        for g in 1..=5 {
            assert_eq!(make_x_g1(g).unwrap().euler_char, x_g1_lf_chi(g));
        }
        for m in 1..=4 {
            assert_eq!(make_w(m).unwrap().euler_char, w_lf_chi(m));
        }
        assert!(make_x_g1(0).is_err());
        assert!(make_w(0).is_err());
    }

    #[test]
    fn fiber_sums() {
        let x = x2(2);
        assert_eq!(x.name, "X(2,2)");
        assert_eq!((x.euler_char, x.signature), (36, -24));
        assert_eq!(x.sections, vec![SectionGroup { square: -2, count: 12 }]);
        assert_eq!(x.pi1.tag, Pi1Tag::Trivial);
        let w = make_w(1).unwrap();
        let wn = fiber_sum(&w, &w, Twist::NTwist(3)).unwrap();
        assert_eq!(wn.name, "W_3(1)");
        assert_eq!((wn.euler_char, wn.signature, wn.fiber_genus), (24, -16, Some(3)));
        assert_eq!(wn.pi1.tag, Pi1Tag::ZPlusZn { n: 3 });
        assert_eq!(wn.sections, vec![SectionGroup { square: -2, count: 2 }]);
        let untwisted = fiber_sum(&w, &w, Twist::Untwisted).unwrap();
        assert_eq!(untwisted.pi1.tag, Pi1Tag::Unknown);
        assert_eq!(
            fiber_sum(&make_x_g1(2).unwrap(), &make_x_g1(3).unwrap(), Twist::Untwisted),
            Err(Smooth4Error::FiberGenusMismatch(2, 3))
        );
        assert!(fiber_sum(&w, &w, Twist::NTwist(0)).is_err());
        // torus fibers: χ adds
        let x1 = make_x_g1(1).unwrap();
        assert_eq!(fiber_sum(&x1, &x1, Twist::Untwisted).unwrap().euler_char, 2 * x1.euler_char);
    }

    #[test]
    fn knot_surgery_rules() {
        let x = x2(2);
        let same = knot_surgery(&x, &SeifertMatrixK::unknot(), true).unwrap();
        assert_eq!((same.euler_char, same.signature, &same.sw_distinguisher), (36, -24, &LaurentPoly::one()));
        assert_eq!(same.fiber_genus, Some(2));
        let t = knot_surgery(&x, &SeifertMatrixK::trefoil(), true).unwrap();
        assert_eq!(t.sw_distinguisher, LaurentPoly::from_coeffs(-2, &[1, 0, -1, 0, 1]));
        assert_eq!(t.fiber_genus, Some(4));
        assert_eq!((t.euler_char, t.signature), (36, -24));
        let k2 = knot_surgery(&x, &demo_family_genus2()[0], true).unwrap();
        assert_eq!(k2.fiber_genus, Some(6));
        assert_eq!(
            knot_surgery(&make_x_g1(2).unwrap(), &SeifertMatrixK::trefoil(), true),
            Err(Smooth4Error::MissingFiberSum)
        );
        assert_eq!(knot_surgery(&x, &SeifertMatrixK::trefoil(), false).unwrap().pi1.tag, Pi1Tag::Unknown);
    }

    #[test]
    fn excision_thm44_instance() {
        let xk = knot_surgery(&x2(2), &demo_family_genus2()[0], true).unwrap();
        let (v, warnings) = excise_filling(&xk, 1).unwrap();
        assert!(warnings.is_empty());
        assert_eq!((v.record.euler_char, v.record.signature), (45, -24));
        assert_eq!(v.boundary.base_genus, 6);
        assert_eq!(v.boundary.euler_number, num_rational::BigRational::new((-1).into(), 2.into()));
        assert!(boundary_is_link(&v));
        assert!(v.stein_flag.value && v.simply_connected.value);
        assert_eq!(v.det_intersection_form.value, Some(0));
        assert_eq!(v.boundary_homology.rank, 12);
    }

    #[test]
    fn excision_upper_bound_and_errors() {
        let x = x2(2);
        let (v, _) = excise_filling(&x, 11).unwrap();
        // Z-graph signature for r legs of weight -2 is 1 - r
        assert_eq!(v.record.signature, -24 - (1 - 11));
        assert_eq!(v.record.euler_char, 36 + 2 - 11);
        assert!(v.simply_connected.value);
        assert_eq!(excise_filling(&x, 12).unwrap_err(), Smooth4Error::TooFewSections { needed: 13, available: 12 });
        let (v0, w) = excise_filling(&x, 0).unwrap();
        assert_eq!(w, vec![ExciseWarning::NoSectionsRemoved]);
        assert_eq!(v0.record.euler_char, 36 - (2 - 4));
        assert!(!v0.stein_flag.value);
    }

    #[test]
    fn excision_w_pipeline() {
        let w = make_w(1).unwrap();
        let wn = fiber_sum(&w, &w, Twist::NTwist(3)).unwrap();
        let wk = knot_surgery(&wn, &demo_family_genus2()[1], true).unwrap();
        assert_eq!(wk.fiber_genus, Some(7));
        let (v, _) = excise_filling(&wk, 1).unwrap();
        assert_eq!(v.boundary.base_genus, 7);
        assert_eq!(v.record.pi1.tag, Pi1Tag::ZPlusZn { n: 3 });
        assert!(!v.simply_connected.value);
        assert_eq!(v.record.euler_char, 24 + 12 - 1);
        assert!(excise_filling(&wk, 2).is_err());
    }

    #[test]
    fn mixed_sections_rejected() {
        let mut x = x2(2);
        x.sections.push(SectionGroup { square: -1, count: 3 });
        assert!(matches!(excise_filling(&x, 1), Err(Smooth4Error::MixedSquares(_))));
    }

    #[test]
    fn distinctness() {
        let x = x2(2);
        let t = knot_surgery(&x, &SeifertMatrixK::trefoil(), true).unwrap();
        let f = knot_surgery(&x, &SeifertMatrixK::figure_eight(), true).unwrap();
        let u = knot_surgery(&x, &SeifertMatrixK::unknot(), true).unwrap();
        assert!(distinguisher_distinct(&[&t, &f]).distinct);
        assert!(distinguisher_distinct(&[&u, &t]).distinct);
        let same = distinguisher_distinct(&[&t, &t]);
        assert!(!same.distinct);
        assert_eq!(same.collisions.len(), 1);
        assert!(!distinguisher_distinct(&[]).distinct);
    }

    #[test]
    fn replay_reproduces_records() {
        let xk = knot_surgery(&x2(3), &SeifertMatrixK::figure_eight(), true).unwrap();
        assert_eq!(xk.provenance.replay().unwrap(), xk);
        let (v, _) = excise_filling(&xk, 4).unwrap();
        assert_eq!(v.record.provenance.replay_filling().unwrap(), v);
        assert!(v.record.provenance.replay().is_err());
        let json = serde_json::to_string(&v).unwrap();
        let back: FillingRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }
}
