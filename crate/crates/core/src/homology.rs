//! Simplicial homology over the integers and the boundary-knot homology
//! formula `H_i(X) = H_{i-1}(Σ) ⊕ H_i(Σ)`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::HomologyError;
use crate::linalg::{invariant_factors, AbelianInvariants, IntMatrix};

/// Finite abstract simplicial complex. Simplices are stored as ascending
/// vertex lists, which also fixes their orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    /// `by_dim[d]` holds the d-simplices in lexicographic order.
    by_dim: Vec<Vec<Vec<u32>>>,
}

fn normalized(s: &[u32]) -> Result<Vec<u32>, HomologyError> {
    let mut v = s.to_vec();
    v.sort_unstable();
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Err(HomologyError::RepeatedVertex(s.to_vec()));
    }
    Ok(v)
}

fn faces(s: &[u32]) -> impl Iterator<Item = Vec<u32>> + '_ {
    (0..s.len()).map(move |i| {
        let mut f = s.to_vec();
        f.remove(i);
        f
    })
}

impl SimplicialComplex {
    fn from_set(set: BTreeSet<Vec<u32>>) -> Self {
        let top = set.iter().map(Vec::len).max().unwrap_or(0);
        let mut by_dim = vec![Vec::new(); top];
        for s in set {
            by_dim[s.len() - 1].push(s);
        }
        SimplicialComplex { by_dim }
    }

    /// The closure of the given simplices under taking faces.
    pub fn from_maximal(simplices: &[Vec<u32>]) -> Result<Self, HomologyError> {
        let mut set = BTreeSet::new();
        let mut stack = Vec::new();
        for s in simplices {
            if s.is_empty() {
                continue;
            }
            stack.push(normalized(s)?);
        }
        while let Some(s) = stack.pop() {
            if s.len() > 1 {
                stack.extend(faces(&s).filter(|f| !set.contains(f)));
            }
            set.insert(s);
        }
        Ok(SimplicialComplex::from_set(set))
    }

    /// Takes the listed simplices as the whole complex; every face must be
    /// listed as well.
    pub fn from_simplices(simplices: &[Vec<u32>]) -> Result<Self, HomologyError> {
        let mut set = BTreeSet::new();
        for s in simplices {
            if !s.is_empty() {
                set.insert(normalized(s)?);
            }
        }
        for s in &set {
            if s.len() > 1 {
                if let Some(face) = faces(s).find(|f| !set.contains(f)) {
                    return Err(HomologyError::FaceClosure {
                        simplex: s.clone(),
                        face,
                    });
                }
            }
        }
        Ok(SimplicialComplex::from_set(set))
    }

    /// JSON array of maximal simplices, each an array of vertex ids.
    pub fn from_json(text: &str) -> Result<Self, HomologyError> {
        let simplices: Vec<Vec<u32>> = serde_json::from_str(text).map_err(|e| HomologyError::Json(e.to_string()))?;
        SimplicialComplex::from_maximal(&simplices)
    }

    /// The maximal simplices, in the JSON file form.
    pub fn maximal_simplices(&self) -> Vec<Vec<u32>> {
        let all: BTreeSet<&Vec<u32>> = self.by_dim.iter().flatten().collect();
        let mut covered = BTreeSet::new();
        for s in &all {
            if s.len() > 1 {
                covered.extend(faces(s));
            }
        }
        all.into_iter().filter(|s| !covered.contains(*s)).cloned().collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.maximal_simplices()).expect("vectors of integers serialize")
    }

    /// -1 for the empty complex.
    pub fn dimension(&self) -> i64 {
        self.by_dim.len() as i64 - 1
    }

    pub fn simplices(&self, d: usize) -> &[Vec<u32>] {
        self.by_dim.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn simplex_count(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn vertices(&self) -> Vec<u32> {
        self.simplices(0).iter().map(|v| v[0]).collect()
    }

    /// Alternating count of simplices.
    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, s)| if d % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    /// Boundary matrix of `C_d → C_{d-1}`: one row per d-simplex, one column
    /// per (d-1)-simplex, sign `(-1)^i` for deleting the i-th vertex.
    pub fn boundary_matrix(&self, d: usize) -> IntMatrix {
        let rows = self.simplices(d);
        if d == 0 {
            return IntMatrix::zeros(rows.len(), 0);
        }
        let cols = self.simplices(d - 1);
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (r, s) in rows.iter().enumerate() {
            for (i, f) in faces(s).enumerate() {
                let c = cols.binary_search(&f).expect("faces are present");
                m[(r, c)] = if i % 2 == 0 { 1.into() } else { (-1).into() };
            }
        }
        m
    }

    pub fn point() -> Self {
        SimplicialComplex::from_maximal(&[vec![0]]).expect("valid")
    }

    /// Boundary of a triangle.
    pub fn circle() -> Self {
        SimplicialComplex::from_maximal(&[vec![0, 1], vec![1, 2], vec![0, 2]]).expect("valid")
    }

    /// Boundary of a tetrahedron.
    pub fn sphere2() -> Self {
        SimplicialComplex::from_maximal(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).expect("valid")
    }

    /// The seven-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}`
    /// modulo 7.
    pub fn torus() -> Self {
        let tris: Vec<Vec<u32>> = (0..7)
            .flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]])
            .collect();
        SimplicialComplex::from_maximal(&tris).expect("valid")
    }

    /// A circle and a separate point.
    pub fn circle_and_point() -> Self {
        SimplicialComplex::from_maximal(&[vec![0, 1], vec![1, 2], vec![0, 2], vec![3]]).expect("valid")
    }

    /// Named test complexes.
    pub fn catalog() -> Vec<(&'static str, SimplicialComplex)> {
        vec![
            ("point", SimplicialComplex::point()),
            ("circle", SimplicialComplex::circle()),
            ("sphere2", SimplicialComplex::sphere2()),
            ("torus", SimplicialComplex::torus()),
            ("circle_and_point", SimplicialComplex::circle_and_point()),
        ]
    }
}

/// One abelian group per dimension, starting at 0. Trailing zero groups are
/// dropped, so the empty list is the zero graded group.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<AbelianInvariants>", into = "Vec<AbelianInvariants>")]
pub struct GradedAbelian {
    groups: Vec<AbelianInvariants>,
}

impl From<Vec<AbelianInvariants>> for GradedAbelian {
    fn from(mut groups: Vec<AbelianInvariants>) -> Self {
        while groups.last().is_some_and(AbelianInvariants::is_trivial) {
            groups.pop();
        }
        GradedAbelian { groups }
    }
}

impl From<GradedAbelian> for Vec<AbelianInvariants> {
    fn from(g: GradedAbelian) -> Self {
        g.groups
    }
}

impl GradedAbelian {
    pub fn new(groups: Vec<AbelianInvariants>) -> Self {
        groups.into()
    }

    /// Free groups of the given ranks.
    pub fn free(ranks: &[usize]) -> Self {
        ranks.iter().map(|&r| AbelianInvariants::free(r)).collect::<Vec<_>>().into()
    }

    pub fn get(&self, i: usize) -> AbelianInvariants {
        self.groups.get(i).cloned().unwrap_or_default()
    }

    pub fn groups(&self) -> &[AbelianInvariants] {
        &self.groups
    }

    /// Highest dimension with a nonzero group, if any.
    pub fn top(&self) -> Option<usize> {
        self.groups.len().checked_sub(1)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(i, g)| if i % 2 == 0 { g.free_rank() as i64 } else { -(g.free_rank() as i64) })
            .sum()
    }
}

impl fmt::Debug for GradedAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `(Z, Z^2, Z)`; the zero graded group prints as `(0)`.
impl fmt::Display for GradedAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return f.write_str("(0)");
        }
        let parts: Vec<String> = self.groups.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn simplicial_homology(k: &SimplicialComplex) -> GradedAbelian {
    let top = k.by_dim.len();
    // factors[d] = nonzero invariant factors of ∂_d
    let factors: Vec<Vec<num_bigint::BigInt>> = (0..=top)
        .map(|d| {
            if d == 0 || d == top {
                Vec::new()
            } else {
                invariant_factors(&k.boundary_matrix(d))
            }
        })
        .collect();
    let groups = (0..top)
        .map(|d| {
            let n = k.simplices(d).len();
            let cycles = n - factors[d].len();
            let boundaries = &factors[d + 1];
            AbelianInvariants::from_invariant_factors(cycles, boundaries)
        })
        .collect::<Vec<_>>();
    groups.into()
}

/// `H_*(X)` from `H_*(Σ)` for the boundary knot of an `n`-dimensional knot
/// with singular set `Σ` of dimension at most `n - 4`.
pub fn predict_boundary_homology(h_sigma: &GradedAbelian, n: usize) -> Result<GradedAbelian, HomologyError> {
    let limit = n as i64 - 4;
    if let Some(top) = h_sigma.top() {
        if top as i64 > limit {
            return Err(HomologyError::DimensionViolation {
                dimension: top,
                ambient: n,
                limit,
            });
        }
    }
    let mut groups = vec![h_sigma.get(0)];
    for i in 1..=n.saturating_sub(3) {
        groups.push(h_sigma.get(i - 1).direct_sum(&h_sigma.get(i)));
    }
    Ok(groups.into())
}

const CIRCLE_EDGES: [(u32, u32); 3] = [(0, 1), (1, 2), (2, 0)];

/// `K × S¹` with the circle on three vertices. Vertex `(v, c)` gets id
/// `3v + c`; each prism `σ × [s, e]` is cut into the staircase simplices
/// `{(v_0, s), ..., (v_j, s), (v_j, e), ..., (v_k, e)}`.
pub fn circle_product(k: &SimplicialComplex) -> SimplicialComplex {
    let mut maximal = Vec::new();
    for s in k.maximal_simplices() {
        for &(a, b) in &CIRCLE_EDGES {
            for j in 0..s.len() {
                let mut simplex: Vec<u32> = s[..=j].iter().map(|v| 3 * v + a).collect();
                simplex.extend(s[j..].iter().map(|v| 3 * v + b));
                maximal.push(simplex);
            }
        }
    }
    SimplicialComplex::from_maximal(&maximal).expect("staircase simplices have distinct vertices")
}
