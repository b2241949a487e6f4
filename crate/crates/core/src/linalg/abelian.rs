use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::snf::{invariant_factors, smith_normal_form, SmithForm};
use crate::map::GroupMap;
use crate::presentation::Presentation;
use crate::word::Word;

/// `Z^free_rank ⊕ Z/d1 ⊕ Z/d2 ⊕ ...` with `d1 | d2 | ...` and every `di >= 2`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "RawInvariants", into = "RawInvariants")]
pub struct AbelianInvariants {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct RawInvariants {
    free_rank: usize,
    torsion: Vec<String>,
}

impl TryFrom<RawInvariants> for AbelianInvariants {
    type Error = String;

    fn try_from(raw: RawInvariants) -> Result<Self, String> {
        let torsion = raw
            .torsion
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        let inv = AbelianInvariants::from_elementary(raw.free_rank, &torsion);
        if inv.torsion != torsion {
            return Err(format!("torsion {:?} is not a divisibility chain of entries >= 2", raw.torsion));
        }
        Ok(inv)
    }
}

impl From<AbelianInvariants> for RawInvariants {
    fn from(a: AbelianInvariants) -> Self {
        RawInvariants {
            free_rank: a.free_rank,
            torsion: a.torsion.iter().map(BigInt::to_string).collect(),
        }
    }
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianInvariants {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Normalizes any list of cyclic orders into invariant-factor form.
    /// Entries 0 count as free summands and units are dropped.
    pub fn from_elementary<T: Into<BigInt> + Clone>(free_rank: usize, orders: &[T]) -> Self {
        let orders: Vec<BigInt> = orders.iter().cloned().map(Into::into).collect();
        let extra_free = orders.iter().filter(|d| d.is_zero()).count();
        let finite: Vec<BigInt> = orders.into_iter().filter(|d| !d.is_zero()).collect();
        let n = finite.len();
        let factors = invariant_factors(&IntMatrix::diagonal(n, n, &finite));
        AbelianInvariants {
            free_rank: free_rank + extra_free,
            torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    /// Invariants of the cokernel of a relation matrix with `cols` generators.
    pub fn from_invariant_factors(cols: usize, factors: &[BigInt]) -> Self {
        AbelianInvariants {
            free_rank: cols - factors.len(),
            torsion: factors.iter().filter(|d| !d.is_one()).cloned().collect(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// True for the infinite cyclic group.
    pub fn is_z(&self) -> bool {
        self.free_rank == 1 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &AbelianInvariants) -> AbelianInvariants {
        let mut orders = self.torsion.clone();
        orders.extend(other.torsion.iter().cloned());
        AbelianInvariants::from_elementary(self.free_rank + other.free_rank, &orders)
    }
}

impl fmt::Debug for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `0`, `Z`, `Z^3`, `Z + Z/2 + Z/6`.
impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        f.write_str(&parts.join(" + "))
    }
}

/// Exponent-sum matrix: one row per relator, one column per generator.
pub fn relator_matrix(p: &Presentation) -> IntMatrix {
    let rows: Vec<Vec<i64>> = p.relators().iter().map(|r| p.exponent_vector(r)).collect();
    IntMatrix::from_rows_with_cols(&rows, p.generator_count())
}

/// `P^ab`, read off the Smith form of the relator matrix.
pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let factors = invariant_factors(&relator_matrix(p));
    AbelianInvariants::from_invariant_factors(p.generator_count(), &factors)
}

/// Exponent sums of generator images: rows are source generators, columns
/// target generators.
pub fn abelianized_map(f: &GroupMap) -> IntMatrix {
    let target = f.target();
    let rows: Vec<Vec<i64>> = f.images().iter().map(|w| target.exponent_vector(w)).collect();
    IntMatrix::from_rows_with_cols(&rows, target.generator_count())
}

/// Outcome of checking that a declared map kills relators after abelianizing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", content = "relator", rename_all = "snake_case")]
pub enum MapCheck {
    Consistent,
    /// Index of the first source relator whose image is nonzero in the
    /// target abelianization.
    Violated(usize),
}

/// Checks every source relator maps into the row space of the target's
/// relator matrix.
pub fn verify_map_abelianized(f: &GroupMap) -> MapCheck {
    let coords = AbelianCoordinates::new(f.target());
    let m = abelianized_map(f);
    for (i, r) in f.source().relators().iter().enumerate() {
        let v: Vec<BigInt> = f.source().exponent_vector(r).into_iter().map(BigInt::from).collect();
        let image = m.left_mul_vector(&v);
        if !coords.is_relation(&image) {
            return MapCheck::Violated(i);
        }
    }
    MapCheck::Consistent
}

/// Coordinates on `P^ab` from the Smith form of the relator matrix.
///
/// An exponent vector `v` has coordinates `v · V`: the first `rank` entries
/// are torsion coordinates (taken modulo the invariant factors), the rest
/// are free coordinates. When the free rank is 1, the free coordinate is
/// oriented so that the first generator with nonzero image maps positively.
#[derive(Clone, Debug)]
pub struct AbelianCoordinates {
    generators: usize,
    factors: Vec<BigInt>,
    right: IntMatrix,
}

impl AbelianCoordinates {
    pub fn new(p: &Presentation) -> Self {
        let SmithForm {
            diagonal, mut right, ..
        } = smith_normal_form(&relator_matrix(p));
        let rank = (0..diagonal.rows().min(diagonal.cols()))
            .take_while(|&i| !diagonal[(i, i)].is_zero())
            .count();
        let factors = (0..rank).map(|i| diagonal[(i, i)].clone()).collect();
        if right.cols() == rank + 1 {
            let first = (0..right.rows()).map(|i| &right[(i, rank)]).find(|x| !x.is_zero());
            if first.is_some_and(|x| x.is_negative()) {
                right.negate_col(rank);
            }
        }
        AbelianCoordinates {
            generators: p.generator_count(),
            factors,
            right,
        }
    }

    pub fn invariants(&self) -> AbelianInvariants {
        AbelianInvariants::from_invariant_factors(self.generators, &self.factors)
    }

    /// Free coordinates of an exponent vector.
    pub fn free_part(&self, v: &[BigInt]) -> Vec<BigInt> {
        let w = self.right.left_mul_vector(v);
        w[self.factors.len()..].to_vec()
    }

    /// Torsion coordinates, reduced into `[0, d)` for each factor `d >= 2`.
    pub fn torsion_part(&self, v: &[BigInt]) -> Vec<BigInt> {
        let w = self.right.left_mul_vector(v);
        self.factors
            .iter()
            .zip(&w)
            .filter(|(d, _)| !d.is_one())
            .map(|(d, x)| x.mod_floor(d))
            .collect()
    }

    /// True when `v` is zero in the abelianization.
    pub fn is_relation(&self, v: &[BigInt]) -> bool {
        let w = self.right.left_mul_vector(v);
        let (torsion, free) = w.split_at(self.factors.len());
        free.iter().all(Zero::is_zero)
            && torsion.iter().zip(&self.factors).all(|(x, d)| (x % d).is_zero())
    }

    /// Image of a word under `P -> Z` when `P^ab` has free rank 1.
    pub fn z_coordinate(&self, p: &Presentation, w: &Word) -> Option<BigInt> {
        if self.generators != p.generator_count() || self.right.cols() != self.factors.len() + 1 {
            return None;
        }
        let v = exponent_vector_big(p, w);
        self.free_part(&v).into_iter().next()
    }
}

pub(crate) fn exponent_vector_big(p: &Presentation, w: &Word) -> Vec<BigInt> {
    p.exponent_vector(w).into_iter().map(BigInt::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_presentation, parse_word};

    fn p(text: &str) -> Presentation {
        parse_presentation(text).unwrap()
    }

    fn ab(text: &str) -> AbelianInvariants {
        abelianization(&p(text))
    }

    #[test]
    fn abelianization_examples() {
        assert_eq!(ab("<a, b | a b a = b a b>"), AbelianInvariants::free(1));
        assert_eq!(ab("<a, b | >"), AbelianInvariants::free(2));
        assert_eq!(ab("<a, b | a^2, b^3>"), AbelianInvariants::from_elementary(0, &[6]));
        assert_eq!(ab("<a, b | a^2, b^3>").torsion(), &[BigInt::from(6)]);
        assert_eq!(ab("< | >"), AbelianInvariants::trivial());
        assert_eq!(ab("<a | a^2>").to_string(), "Z/2");
        assert_eq!(ab("<a, b | a^2, b^2>").to_string(), "Z/2 + Z/2");
        assert_eq!(ab("<a, b, c | a^2, b^4>").to_string(), "Z + Z/2 + Z/4");
    }

    #[test]
    fn direct_sum_normalizes() {
        let a = AbelianInvariants::from_elementary(1, &[2]);
        let b = AbelianInvariants::from_elementary(0, &[3]);
        assert_eq!(a.direct_sum(&b).to_string(), "Z + Z/6");
        assert_eq!(AbelianInvariants::from_elementary(0, &[1, 0, 4, 2]).to_string(), "Z + Z/2 + Z/4");
    }

    #[test]
    fn invariants_json_round_trip() {
        let a = AbelianInvariants::from_elementary(2, &[2, 6]);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"free_rank":2,"torsion":["2","6"]}"#);
        assert_eq!(serde_json::from_str::<AbelianInvariants>(&json).unwrap(), a);
        assert!(serde_json::from_str::<AbelianInvariants>(r#"{"free_rank":0,"torsion":["2","3"]}"#).is_err());
    }

    #[test]
    fn abelianized_map_examples() {
        let src = p("<a, b | >");
        assert_eq!(abelianized_map(&GroupMap::identity(&src)), IntMatrix::identity(2));

        let tgt = p("<x, y | >");
        let f = GroupMap::from_images(
            src.clone(),
            tgt.clone(),
            vec![parse_word("x y", &tgt).unwrap(), parse_word("y^-1", &tgt).unwrap()],
        )
        .unwrap();
        assert_eq!(abelianized_map(&f), IntMatrix::from_rows(&[vec![1, 1], vec![0, -1]]));

        let trefoil = p("<a, b | aba = bab>");
        let z = p("<t | >");
        let t = parse_word("t", &z).unwrap();
        let to_z = GroupMap::from_images(trefoil, z, vec![t.clone(), t]).unwrap();
        assert_eq!(abelianized_map(&to_z), IntMatrix::from_rows(&[vec![1], vec![1]]));
    }

    #[test]
    fn map_checks() {
        let free = p("<a, b | >");
        let any = p("<x | x^5>");
        let x = parse_word("x", &any).unwrap();
        let f = GroupMap::from_images(free, any, vec![x.clone(), x]).unwrap();
        assert_eq!(verify_map_abelianized(&f), MapCheck::Consistent);

        let src = p("<a | a^2>");
        let tgt = p("<b | >");
        let f = GroupMap::from_images(src, tgt.clone(), vec![parse_word("b", &tgt).unwrap()]).unwrap();
        assert_eq!(verify_map_abelianized(&f), MapCheck::Violated(0));

        let t = p("<a, b | aba = bab>");
        let swap = GroupMap::from_images(
            t.clone(),
            t.clone(),
            vec![parse_word("b", &t).unwrap(), parse_word("a", &t).unwrap()],
        )
        .unwrap();
        assert_eq!(verify_map_abelianized(&swap), MapCheck::Consistent);

        // Z/4 -> Z/2, generator to generator: relator a^4 maps to 4b = 0
        let src = p("<a | a^4>");
        let tgt = p("<b | b^2>");
        let f = GroupMap::from_images(src, tgt.clone(), vec![parse_word("b", &tgt).unwrap()]).unwrap();
        assert_eq!(verify_map_abelianized(&f), MapCheck::Consistent);
    }

    #[test]
    fn z_coordinates_are_oriented() {
        let t = p("<a, b | aba = bab>");
        let c = AbelianCoordinates::new(&t);
        assert_eq!(c.z_coordinate(&t, &parse_word("a", &t).unwrap()), Some(1.into()));
        assert_eq!(c.z_coordinate(&t, &parse_word("b", &t).unwrap()), Some(1.into()));
        assert_eq!(c.z_coordinate(&t, &parse_word("a^-2 b", &t).unwrap()), Some((-1).into()));

        // torus knot (3, 5): a -> 5, b -> 3
        let k = p("<a, b | a^3 = b^5>");
        let c = AbelianCoordinates::new(&k);
        assert_eq!(c.z_coordinate(&k, &parse_word("a", &k).unwrap()), Some(5.into()));
        assert_eq!(c.z_coordinate(&k, &parse_word("b", &k).unwrap()), Some(3.into()));

        let free2 = p("<a, b | >");
        assert_eq!(AbelianCoordinates::new(&free2).z_coordinate(&free2, &Word::identity()), None);
    }
}
