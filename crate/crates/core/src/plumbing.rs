//! Plumbing trees of disk bundles over surfaces, their intersection forms,
//! and the blow-up / blow-down calculus that preserves the oriented boundary.
//!
//! Graphs are trees with `+1` edge signs only. Vertex ids are stable across
//! moves and new vertices receive `max id + 1`, so move scripts replay
//! deterministically.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmat::{self, smith_normal_form, IntMatrix};

pub type VertexId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlumbingError {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("unknown vertex id {0}")]
    UnknownVertex(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("multiple edges between {0} and {1}")]
    MultiEdge(VertexId, VertexId),
    #[error("graph is not a tree: {0}")]
    NotATree(String),
    #[error("no edge between {0} and {1}")]
    NoSuchEdge(VertexId, VertexId),
    #[error("the multiplicity list must not be empty")]
    EmptyMultiplicities,
    #[error("multiplicity p_{index} = {value} must be positive")]
    NonPositiveMultiplicity { index: usize, value: i64 },
    #[error("cannot blow down vertex {vertex}: {reason}")]
    InvalidBlowDown { vertex: VertexId, reason: String },
    #[error("blow-up sign must be +1 or -1, got {0}")]
    InvalidSign(i64),
    #[error("move {index} failed: {source}")]
    Script {
        index: usize,
        #[source]
        source: Box<PlumbingError>,
    },
    #[error("malformed move: {0}")]
    MalformedMove(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: VertexId,
    pub weight: i64,
    pub genus: u32,
}

/// A plumbing tree. Vertex order is insertion order and fixes the row order
/// of [`intersection_matrix`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlumbingGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(VertexId, VertexId)>,
}

#[derive(Deserialize)]
struct RawGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(VertexId, VertexId)>,
}

impl<'de> Deserialize<'de> for PlumbingGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawGraph::deserialize(d)?;
        PlumbingGraph::new(raw.vertices, raw.edges).map_err(serde::de::Error::custom)
    }
}

impl PlumbingGraph {
    /// Validates a vertex/edge list: unique ids, no loops or repeated edges,
    /// connected and acyclic. The empty graph (boundary `S³`) is allowed.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(VertexId, VertexId)>) -> Result<Self, PlumbingError> {
        let mut ids = BTreeSet::new();
        for v in &vertices {
            if !ids.insert(v.id) {
                return Err(PlumbingError::DuplicateVertex(v.id));
            }
        }
        let mut seen = BTreeSet::new();
        for &(a, b) in &edges {
            for x in [a, b] {
                if !ids.contains(&x) {
                    return Err(PlumbingError::UnknownVertex(x));
                }
            }
            if a == b {
                return Err(PlumbingError::SelfLoop(a));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(PlumbingError::MultiEdge(a, b));
            }
        }
        let graph = PlumbingGraph { vertices, edges };
        graph.check_tree()?;
        Ok(graph)
    }

    fn check_tree(&self) -> Result<(), PlumbingError> {
        let n = self.vertices.len();
        if n == 0 {
            return if self.edges.is_empty() {
                Ok(())
            } else {
                Err(PlumbingError::NotATree("edges without vertices".into()))
            };
        }
        if self.edges.len() != n - 1 {
            return Err(PlumbingError::NotATree(format!(
                "{} vertices but {} edges",
                n,
                self.edges.len()
            )));
        }
        let adj = self.adjacency();
        let start = self.vertices[0].id;
        let mut reached = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &adj[&v] {
                if reached.insert(w) {
                    stack.push(w);
                }
            }
        }
        if reached.len() != n {
            return Err(PlumbingError::NotATree("graph is disconnected".into()));
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, id: VertexId) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    fn vertex_mut(&mut self, id: VertexId) -> Result<&mut Vertex, PlumbingError> {
        self.vertices
            .iter_mut()
            .find(|v| v.id == id)
            .ok_or(PlumbingError::UnknownVertex(id))
    }

    pub fn adjacency(&self) -> BTreeMap<VertexId, Vec<VertexId>> {
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> =
            self.vertices.iter().map(|v| (v.id, Vec::new())).collect();
        for &(a, b) in &self.edges {
            adj.get_mut(&a).unwrap().push(b);
            adj.get_mut(&b).unwrap().push(a);
        }
        adj
    }

    pub fn neighbors(&self, id: VertexId) -> Vec<VertexId> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == id {
                    Some(b)
                } else if b == id {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degree(&self, id: VertexId) -> usize {
        self.neighbors(id).len()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edges.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
    }

    fn fresh_id(&self) -> VertexId {
        self.vertices.iter().map(|v| v.id + 1).max().unwrap_or(0)
    }

    pub fn total_genus(&self) -> u64 {
        self.vertices.iter().map(|v| u64::from(v.genus)).sum()
    }

    /// The unique vertex of degree at least three, else the first vertex.
    /// `None` when the graph is empty or has several branch points.
    pub fn star_center(&self) -> Option<VertexId> {
        let branch: Vec<VertexId> =
            self.vertices.iter().map(|v| v.id).filter(|&id| self.degree(id) >= 3).collect();
        match branch.len() {
            0 => self.vertices.first().map(|v| v.id),
            1 => Some(branch[0]),
            _ => None,
        }
    }

    /// Decomposes the graph as a star around `center`: each leg is the list
    /// of vertices read outward. `None` if some non-central vertex branches.
    pub fn legs_from(&self, center: VertexId) -> Option<Vec<Vec<Vertex>>> {
        self.vertex(center)?;
        let mut legs = Vec::new();
        for first in self.neighbors(center) {
            let mut leg = Vec::new();
            let (mut prev, mut cur) = (center, first);
            loop {
                leg.push(self.vertex(cur)?.clone());
                let next: Vec<VertexId> =
                    self.neighbors(cur).into_iter().filter(|&w| w != prev).collect();
                match next.as_slice() {
                    [] => break,
                    [w] => {
                        prev = cur;
                        cur = *w;
                    }
                    _ => return None,
                }
            }
            legs.push(leg);
        }
        Some(legs)
    }

    /// Id-free description of a star: central `(weight, genus)` and the
    /// sorted list of leg `(weight, genus)` sequences.
    pub fn star_shape(&self) -> Option<StarShape> {
        let center = self.star_center()?;
        let c = self.vertex(center)?;
        let mut legs: Vec<Vec<(i64, u32)>> = self
            .legs_from(center)?
            .into_iter()
            .map(|leg| leg.into_iter().map(|v| (v.weight, v.genus)).collect())
            .collect();
        legs.sort();
        Some(StarShape { center_weight: c.weight, center_genus: c.genus, legs })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarShape {
    pub center_weight: i64,
    pub center_genus: u32,
    pub legs: Vec<Vec<(i64, u32)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlumbingWarning {
    /// A multiplicity `p = 1` produced a leg with no vertices; the central
    /// weight still counts it.
    EmptyLeg { leg: usize },
}

fn check_multiplicities(p: &[i64]) -> Result<(), PlumbingError> {
    if p.is_empty() {
        return Err(PlumbingError::EmptyMultiplicities);
    }
    if let Some((index, &value)) = p.iter().enumerate().find(|(_, &v)| v < 1) {
        return Err(PlumbingError::NonPositiveMultiplicity { index: index + 1, value });
    }
    Ok(())
}

/// Central vertex of weight 0 and genus `h`, one leaf of weight `p_i` per
/// multiplicity: the plumbing of circle bundles whose boundary is `Y_{h,p}`.
pub fn star_graph_left(h: u32, p: &[i64]) -> Result<PlumbingGraph, PlumbingError> {
    check_multiplicities(p)?;
    let mut vertices = vec![Vertex { id: 0, weight: 0, genus: h }];
    let mut edges = Vec::new();
    for (i, &pi) in p.iter().enumerate() {
        let id = i as VertexId + 1;
        vertices.push(Vertex { id, weight: pi, genus: 0 });
        edges.push((0, id));
    }
    PlumbingGraph::new(vertices, edges)
}

/// The disk-bundle plumbing `Z_{h,p}`: central `(0, h)` with leaves `-p_i`.
pub fn z_graph(h: u32, p: &[i64]) -> Result<PlumbingGraph, PlumbingError> {
    Ok(reverse_orientation(&star_graph_left(h, p)?))
}

/// Central vertex of weight `-r` and genus `h`; leg `i` is a chain of
/// `p_i - 1` vertices of weight `-2`. Legs with `p_i = 1` are empty and
/// reported as warnings.
pub fn star_graph_right(
    h: u32,
    p: &[i64],
) -> Result<(PlumbingGraph, Vec<PlumbingWarning>), PlumbingError> {
    check_multiplicities(p)?;
    let mut vertices = vec![Vertex { id: 0, weight: -(p.len() as i64), genus: h }];
    let mut edges = Vec::new();
    let mut warnings = Vec::new();
    let mut next: VertexId = 1;
    for (leg, &pi) in p.iter().enumerate() {
        if pi == 1 {
            warnings.push(PlumbingWarning::EmptyLeg { leg: leg + 1 });
            continue;
        }
        let mut prev = 0;
        for _ in 0..pi - 1 {
            vertices.push(Vertex { id: next, weight: -2, genus: 0 });
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Ok((PlumbingGraph::new(vertices, edges)?, warnings))
}

/// Symmetric matrix with the weights on the diagonal and a 1 per edge.
pub fn intersection_matrix(g: &PlumbingGraph) -> IntMatrix {
    let index: BTreeMap<VertexId, usize> =
        g.vertices.iter().enumerate().map(|(i, v)| (v.id, i)).collect();
    let n = g.vertices.len();
    let mut m = IntMatrix::from_fn(n, n, |i, j| {
        if i == j {
            BigInt::from(g.vertices[i].weight)
        } else {
            BigInt::zero()
        }
    });
    for &(a, b) in &g.edges {
        let (i, j) = (index[&a], index[&b]);
        m[(i, j)] = BigInt::from(1);
        m[(j, i)] = BigInt::from(1);
    }
    m
}

pub fn reverse_orientation(g: &PlumbingGraph) -> PlumbingGraph {
    PlumbingGraph {
        vertices: g.vertices.iter().map(|v| Vertex { weight: -v.weight, ..v.clone() }).collect(),
        edges: g.edges.clone(),
    }
}

/// Sign of the exceptional sphere in a blow-up: `-1` is the usual
/// `CP²‾` blow-up, `+1` blows up with `CP²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlowSign {
    Negative,
    Positive,
}

impl BlowSign {
    pub fn value(self) -> i64 {
        match self {
            BlowSign::Negative => -1,
            BlowSign::Positive => 1,
        }
    }

    pub fn from_value(v: i64) -> Result<Self, PlumbingError> {
        match v {
            -1 => Ok(BlowSign::Negative),
            1 => Ok(BlowSign::Positive),
            other => Err(PlumbingError::InvalidSign(other)),
        }
    }
}

/// Where a blow-up happens.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlowUpSite {
    Vertex(VertexId),
    Edge(VertexId, VertexId),
}

/// A single move. JSON form: `{"op": "blow_up_at_vertex", "args": [id]}`,
/// `{"op": "blow_up_on_edge", "args": [a, b]}`, `{"op": "blow_down", "args": [id]}`,
/// each with an optional `"sign": 1` (default `-1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    BlowUpAtVertex { vertex: VertexId, sign: BlowSign },
    BlowUpOnEdge { a: VertexId, b: VertexId, sign: BlowSign },
    BlowDown { vertex: VertexId, sign: BlowSign },
}

#[derive(Serialize, Deserialize)]
struct RawMove {
    op: String,
    args: Vec<i64>,
    #[serde(default = "default_sign", skip_serializing_if = "is_default_sign")]
    sign: i64,
}

fn default_sign() -> i64 {
    -1
}

fn is_default_sign(s: &i64) -> bool {
    *s == -1
}

impl TryFrom<RawMove> for Move {
    type Error = PlumbingError;

    fn try_from(raw: RawMove) -> Result<Self, PlumbingError> {
        let sign = BlowSign::from_value(raw.sign)?;
        let id = |x: i64| {
            VertexId::try_from(x).map_err(|_| PlumbingError::MalformedMove(format!("bad vertex id {x}")))
        };
        match (raw.op.as_str(), raw.args.as_slice()) {
            ("blow_up_at_vertex", [v]) => Ok(Move::BlowUpAtVertex { vertex: id(*v)?, sign }),
            ("blow_up_on_edge", [a, b]) => Ok(Move::BlowUpOnEdge { a: id(*a)?, b: id(*b)?, sign }),
            ("blow_down", [v]) => Ok(Move::BlowDown { vertex: id(*v)?, sign }),
            (op, args) => Err(PlumbingError::MalformedMove(format!("{op} with {} args", args.len()))),
        }
    }
}

impl From<Move> for RawMove {
    fn from(m: Move) -> Self {
        let (op, args, sign) = match m {
            Move::BlowUpAtVertex { vertex, sign } => ("blow_up_at_vertex", vec![vertex.into()], sign),
            Move::BlowUpOnEdge { a, b, sign } => ("blow_up_on_edge", vec![a.into(), b.into()], sign),
            Move::BlowDown { vertex, sign } => ("blow_down", vec![vertex.into()], sign),
        };
        RawMove { op: op.to_string(), args, sign: sign.value() }
    }
}

impl Serialize for Move {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawMove::from(*self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Move {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Move::try_from(RawMove::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Ordered list of moves; serializes as a plain JSON array.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MoveScript {
    pub moves: Vec<Move>,
}

impl MoveScript {
    /// Applies every move in order, failing on the first inapplicable one.
    pub fn replay(&self, g: &PlumbingGraph) -> Result<PlumbingGraph, PlumbingError> {
        self.moves.iter().enumerate().try_fold(g.clone(), |acc, (index, mv)| {
            apply_move(&acc, *mv).map_err(|e| PlumbingError::Script { index, source: Box::new(e) })
        })
    }
}

pub fn apply_move(g: &PlumbingGraph, mv: Move) -> Result<PlumbingGraph, PlumbingError> {
    match mv {
        Move::BlowUpAtVertex { vertex, sign } => blow_up(g, BlowUpSite::Vertex(vertex), sign),
        Move::BlowUpOnEdge { a, b, sign } => blow_up(g, BlowUpSite::Edge(a, b), sign),
        Move::BlowDown { vertex, sign } => blow_down(g, vertex, sign),
    }
}

/// Blow-up at a vertex (new `sign` leaf, vertex weight shifted by `sign`) or
/// on an edge (new `sign` vertex subdividing it, both ends shifted).
pub fn blow_up(g: &PlumbingGraph, site: BlowUpSite, sign: BlowSign) -> Result<PlumbingGraph, PlumbingError> {
    let eps = sign.value();
    let mut out = g.clone();
    let new_id = g.fresh_id();
    match site {
        BlowUpSite::Vertex(v) => {
            out.vertex_mut(v)?.weight += eps;
            out.edges.push((v, new_id));
        }
        BlowUpSite::Edge(a, b) => {
            let pos = out
                .edges
                .iter()
                .position(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
                .ok_or(PlumbingError::NoSuchEdge(a, b))?;
            out.edges.remove(pos);
            out.vertex_mut(a)?.weight += eps;
            out.vertex_mut(b)?.weight += eps;
            out.edges.push((a, new_id));
            out.edges.push((new_id, b));
        }
    }
    out.vertices.push(Vertex { id: new_id, weight: eps, genus: 0 });
    Ok(out)
}

/// Blows down a genus-0 vertex of weight `sign` and degree at most two.
pub fn blow_down(g: &PlumbingGraph, v: VertexId, sign: BlowSign) -> Result<PlumbingGraph, PlumbingError> {
    let eps = sign.value();
    let vert = g.vertex(v).ok_or(PlumbingError::UnknownVertex(v))?;
    let fail = |reason: String| PlumbingError::InvalidBlowDown { vertex: v, reason };
    if vert.weight != eps {
        return Err(fail(format!("weight is {}, expected {}", vert.weight, eps)));
    }
    if vert.genus != 0 {
        return Err(fail(format!("genus is {}", vert.genus)));
    }
    let nbrs = g.neighbors(v);
    if nbrs.len() > 2 {
        return Err(fail(format!("degree {} exceeds 2", nbrs.len())));
    }
    if let [a, b] = nbrs[..] {
        if a == b {
            return Err(fail("would create a loop".into()));
        }
        if g.has_edge(a, b) {
            return Err(fail("would create a multi-edge".into()));
        }
    }
    let mut out = g.clone();
    out.vertices.retain(|x| x.id != v);
    out.edges.retain(|&(a, b)| a != v && b != v);
    for &w in &nbrs {
        out.vertex_mut(w)?.weight -= eps;
    }
    if let [a, b] = nbrs[..] {
        out.edges.push((a, b));
    }
    Ok(out)
}

/// `H₁` of the boundary 3-manifold as `Z^rank ⊕ ⊕ Z/t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryHomology {
    pub rank: usize,
    #[serde(with = "crate::bigjson::int_vec")]
    pub torsion: Vec<BigInt>,
}

impl std::fmt::Display for BoundaryHomology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".to_string() } else { format!("Z^{}", self.rank) });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `H₁(∂P) = Z^{2Σg_v} ⊕ coker(Q)` for a plumbing tree with intersection matrix `Q`.
pub fn boundary_homology(g: &PlumbingGraph) -> BoundaryHomology {
    let snf = smith_normal_form(&intersection_matrix(g));
    BoundaryHomology {
        rank: 2 * g.total_genus() as usize + snf.cokernel_free_rank(),
        torsion: snf.torsion(),
    }
}

/// True iff the intersection form is negative definite, i.e. the boundary
/// is realized as the link of a normal surface singularity (Grauert).
pub fn grauert_check(g: &PlumbingGraph) -> bool {
    exactmat::is_negative_definite(&intersection_matrix(g)).expect("plumbing matrices are symmetric")
}

/// A move script taking `star_graph_left(h, p)` to a graph with the same
/// star shape as `star_graph_right(h, p)`.
///
/// Per leaf of weight `p`: `p - 1` negative blow-ups on the edge next to the
/// leaf turn the chain into `(-1) -- (-2)^{p-2} -- (-1) -- (+1)` (center
/// first), then the `+1` leaf is blown down positively. Ids follow the
/// fresh-id rule of [`blow_up`].
pub fn left_to_right_script(h: u32, p: &[i64]) -> Result<MoveScript, PlumbingError> {
    let left = star_graph_left(h, p)?;
    let mut moves = Vec::new();
    let mut next_id = left.fresh_id();
    for (i, &pi) in p.iter().enumerate() {
        let leaf = i as VertexId + 1;
        let mut inner: VertexId = 0;
        for _ in 0..pi - 1 {
            moves.push(Move::BlowUpOnEdge { a: inner, b: leaf, sign: BlowSign::Negative });
            inner = next_id;
            next_id += 1;
        }
        moves.push(Move::BlowDown { vertex: leaf, sign: BlowSign::Positive });
    }
    Ok(MoveScript { moves })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::{determinant, signature};

    fn weights(g: &PlumbingGraph) -> Vec<i64> {
        g.vertices().iter().map(|v| v.weight).collect()
    }

    fn mat(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn left_star_examples() {
        let g = star_graph_left(2, &[2]).unwrap();
        assert_eq!(weights(&g), vec![0, 2]);
        assert_eq!(g.vertices()[0].genus, 2);
        assert_eq!(weights(&star_graph_left(0, &[1, 1]).unwrap()), vec![0, 1, 1]);
        assert_eq!(weights(&star_graph_left(1, &[2, 3]).unwrap()), vec![0, 2, 3]);
    }

    #[test]
    fn left_star_rejects_bad_multiplicities() {
        assert_eq!(star_graph_left(0, &[]).unwrap_err(), PlumbingError::EmptyMultiplicities);
        assert!(matches!(
            star_graph_left(0, &[2, 0]).unwrap_err(),
            PlumbingError::NonPositiveMultiplicity { index: 2, value: 0 }
        ));
    }

    #[test]
    fn right_star_examples() {
        let (g, w) = star_graph_right(3, &[2]).unwrap();
        assert_eq!(weights(&g), vec![-1, -2]);
        assert!(w.is_empty());
        let (g, _) = star_graph_right(3, &[2, 2]).unwrap();
        assert_eq!(intersection_matrix(&g), mat(&[vec![-2, 1, 1], vec![1, -2, 0], vec![1, 0, -2]]));
        let (g, _) = star_graph_right(1, &[4]).unwrap();
        assert_eq!(weights(&g), vec![-1, -2, -2, -2]);
        assert_eq!(g.star_shape().unwrap().legs, vec![vec![(-2, 0); 3]]);
    }

    #[test]
    fn right_star_empty_leg_warns() {
        let (g, w) = star_graph_right(0, &[1, 3]).unwrap();
        assert_eq!(w, vec![PlumbingWarning::EmptyLeg { leg: 1 }]);
        assert_eq!(weights(&g), vec![-2, -2, -2]);
    }

    #[test]
    fn intersection_matrix_examples() {
        let z = z_graph(4, &[3]).unwrap();
        assert_eq!(intersection_matrix(&z), mat(&[vec![0, 1], vec![1, -3]]));
        let single = PlumbingGraph::new(vec![Vertex { id: 7, weight: -5, genus: 0 }], vec![]).unwrap();
        assert_eq!(intersection_matrix(&single), mat(&[vec![-5]]));
    }

    #[test]
    fn reverse_orientation_examples() {
        let z = z_graph(2, &[2, 3]).unwrap();
        assert_eq!(weights(&z), vec![0, -2, -3]);
        assert_eq!(reverse_orientation(&z), star_graph_left(2, &[2, 3]).unwrap());
        let single = PlumbingGraph::new(vec![Vertex { id: 0, weight: 0, genus: 0 }], vec![]).unwrap();
        assert_eq!(reverse_orientation(&single), single);
    }

    #[test]
    fn construction_rejects_non_trees() {
        let v = |id| Vertex { id, weight: -2, genus: 0 };
        assert_eq!(
            PlumbingGraph::new(vec![v(0), v(1)], vec![(0, 1), (1, 0)]).unwrap_err(),
            PlumbingError::MultiEdge(1, 0)
        );
        assert_eq!(PlumbingGraph::new(vec![v(0)], vec![(0, 0)]).unwrap_err(), PlumbingError::SelfLoop(0));
        assert!(matches!(
            PlumbingGraph::new(vec![v(0), v(1), v(2)], vec![(0, 1), (1, 2), (2, 0)]).unwrap_err(),
            PlumbingError::NotATree(_)
        ));
        assert!(matches!(
            PlumbingGraph::new(vec![v(0), v(1), v(2), v(3)], vec![(0, 1), (2, 3)]).unwrap_err(),
            PlumbingError::NotATree(_)
        ));
        assert_eq!(PlumbingGraph::new(vec![v(0), v(0)], vec![]).unwrap_err(), PlumbingError::DuplicateVertex(0));
    }

    #[test]
    fn blow_down_leaf_increments_neighbor() {
        let g = PlumbingGraph::new(
            vec![Vertex { id: 0, weight: -3, genus: 1 }, Vertex { id: 1, weight: -1, genus: 0 }],
            vec![(0, 1)],
        )
        .unwrap();
        let d = blow_down(&g, 1, BlowSign::Negative).unwrap();
        assert_eq!(d.vertices(), &[Vertex { id: 0, weight: -2, genus: 1 }]);
        assert!(d.edges().is_empty());
    }

    #[test]
    fn blow_down_degree_two_joins_neighbors() {
        let g = PlumbingGraph::new(
            vec![
                Vertex { id: 0, weight: -3, genus: 0 },
                Vertex { id: 1, weight: -1, genus: 0 },
                Vertex { id: 2, weight: -4, genus: 0 },
            ],
            vec![(0, 1), (1, 2)],
        )
        .unwrap();
        let d = blow_down(&g, 1, BlowSign::Negative).unwrap();
        assert_eq!(weights(&d), vec![-2, -3]);
        assert!(d.has_edge(0, 2));
    }

    #[test]
    fn blow_down_errors() {
        let (g, _) = star_graph_right(1, &[2, 2, 2]).unwrap();
        // center has degree 3 and weight -3, legs are -2
        assert!(matches!(blow_down(&g, 1, BlowSign::Negative), Err(PlumbingError::InvalidBlowDown { .. })));
        let genus = PlumbingGraph::new(vec![Vertex { id: 0, weight: -1, genus: 1 }], vec![]).unwrap();
        assert!(matches!(blow_down(&genus, 0, BlowSign::Negative), Err(PlumbingError::InvalidBlowDown { .. })));
        let up = blow_up(&g, BlowUpSite::Vertex(0), BlowSign::Negative).unwrap();
        let twice = blow_up(&up, BlowUpSite::Vertex(4), BlowSign::Negative).unwrap();
        assert_eq!(twice.vertex(4).unwrap().weight, -2);
        assert!(blow_down(&twice, 4, BlowSign::Negative).is_err());
        assert!(blow_down(&twice, 5, BlowSign::Negative).is_ok());
        // a +1 blow-down needs the explicit sign
        let plus = star_graph_left(0, &[1]).unwrap();
        assert!(blow_down(&plus, 1, BlowSign::Negative).is_err());
        assert!(blow_down(&plus, 1, BlowSign::Positive).is_ok());
    }

    #[test]
    fn blow_up_then_down_is_identity() {
        let g = star_graph_left(1, &[2, 5]).unwrap();
        let up = blow_up(&g, BlowUpSite::Edge(0, 2), BlowSign::Negative).unwrap();
        assert_eq!(weights(&up), vec![-1, 2, 4, -1]);
        let down = blow_down(&up, 3, BlowSign::Negative).unwrap();
        assert_eq!(down.star_shape(), g.star_shape());
        assert_eq!(boundary_homology(&down), boundary_homology(&g));
    }

    #[test]
    fn blow_up_flips_det_sign_and_shifts_signature() {
        let g = star_graph_left(0, &[2, 3]).unwrap();
        let q = intersection_matrix(&g);
        let up = blow_up(&g, BlowUpSite::Vertex(1), BlowSign::Negative).unwrap();
        let q_up = intersection_matrix(&up);
        assert_eq!(determinant(&q_up).unwrap(), -determinant(&q).unwrap());
        assert_eq!(signature(&q_up).unwrap(), signature(&q).unwrap() - 1);
        let up_pos = blow_up(&g, BlowUpSite::Vertex(1), BlowSign::Positive).unwrap();
        assert_eq!(signature(&intersection_matrix(&up_pos)).unwrap(), signature(&q).unwrap() + 1);
    }

    #[test]
    fn boundary_homology_examples() {
        for h in 0..3 {
            let left = boundary_homology(&star_graph_left(h, &[2]).unwrap());
            let right = boundary_homology(&star_graph_right(h, &[2]).unwrap().0);
            assert_eq!(left, BoundaryHomology { rank: 2 * h as usize, torsion: vec![] });
            assert_eq!(right, left);
        }
        let s1s2 = PlumbingGraph::new(vec![Vertex { id: 0, weight: 0, genus: 0 }], vec![]).unwrap();
        assert_eq!(boundary_homology(&s1s2), BoundaryHomology { rank: 1, torsion: vec![] });
        let (d4, _) = star_graph_right(0, &[2, 2]).unwrap();
        assert_eq!(boundary_homology(&d4), BoundaryHomology { rank: 0, torsion: vec![BigInt::from(4)] });
        assert_eq!(boundary_homology(&d4).to_string(), "Z/4");
    }

    #[test]
    fn grauert_examples() {
        assert!(grauert_check(&star_graph_right(2, &[2, 2]).unwrap().0));
        assert!(!grauert_check(&star_graph_left(2, &[2, 2]).unwrap()));
        assert!(grauert_check(&star_graph_right(5, &[2]).unwrap().0));
    }

    #[test]
    fn left_to_right_script_replays() {
        for (h, p) in [(2u32, vec![2i64]), (0, vec![2, 3, 5]), (1, vec![1, 4]), (3, vec![6, 6, 2, 3])] {
            let script = left_to_right_script(h, &p).unwrap();
            let out = script.replay(&star_graph_left(h, &p).unwrap()).unwrap();
            let (right, _) = star_graph_right(h, &p).unwrap();
            assert_eq!(out.star_shape(), right.star_shape(), "h={h} p={p:?}");
        }
    }

    #[test]
    fn script_json_form() {
        let script = left_to_right_script(0, &[2]).unwrap();
        let json = serde_json::to_string(&script).unwrap();
        assert_eq!(
            json,
            r#"[{"op":"blow_up_on_edge","args":[0,1]},{"op":"blow_down","args":[1],"sign":1}]"#
        );
        let back: MoveScript = serde_json::from_str(&json).unwrap();
        assert_eq!(back, script);
        assert!(serde_json::from_str::<MoveScript>(r#"[{"op":"twist","args":[1]}]"#).is_err());
        assert!(serde_json::from_str::<MoveScript>(r#"[{"op":"blow_down","args":[1],"sign":2}]"#).is_err());
    }

    #[test]
    fn script_replay_reports_failing_index() {
        let script: MoveScript =
            serde_json::from_str(r#"[{"op":"blow_up_at_vertex","args":[0]},{"op":"blow_down","args":[1]}]"#)
                .unwrap();
        let err = script.replay(&star_graph_left(0, &[3]).unwrap()).unwrap_err();
        assert!(matches!(err, PlumbingError::Script { index: 1, .. }));
    }

    #[test]
    fn graph_json_roundtrip_and_validation() {
        let g = star_graph_left(1, &[2, 3]).unwrap();
        let json = serde_json::to_string(&g).unwrap();
        let back: PlumbingGraph = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        let cyclic = r#"{"vertices":[{"id":0,"weight":1,"genus":0},{"id":1,"weight":1,"genus":0}],"edges":[[0,1],[0,1]]}"#;
        assert!(serde_json::from_str::<PlumbingGraph>(cyclic).is_err());
    }
}
