//! From partitions and paths to local regions: S⁽⁰⁾_max, the box indexing,
//! λ ↦ (z, c, J), S ↦ w_S and the configuration of boxes.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::regions::{self, BoxConfiguration, LocalRegion};
use crate::scalar::{Field, Scalar};
use crate::schurweyl::bratteli::{bratteli_bounded, mu_ring, Path, RectPair};
use crate::schurweyl::partition::{content, dim_gl, Partition};
use crate::weyl::{self, inversion_set, Root, SignedPermutation};

/// S⁽⁰⁾_max: intersect λ with the south block B′ (rows c+1..c+d, columns
/// 1..lo), read off μ and rebuild μ̊.
pub fn s0max(lambda: &Partition, p: &RectPair) -> Result<Partition> {
    let g = p.geometry();
    let mu_c: Vec<usize> = (0..g.d).map(|i| lambda.part(g.c + i).min(g.lo)).collect();
    let mu = Partition::new((1..=g.d).map(|j| g.lo - mu_c[g.d - j]).collect())?;
    let s0 = mu_ring(g, &mu);
    if !lambda.contains(&s0) {
        return Err(Error::NotReachable(format!(
            "{lambda} does not contain {s0}"
        )));
    }
    Ok(s0)
}

/// A box of a skew shape with its index, content and doubled shifted content.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexedBox {
    pub row: usize,
    pub col: usize,
    pub content: i64,
    pub shifted2: i64,
}

impl IndexedBox {
    /// Weakly NW: earlier in reading order. On equal or adjacent diagonals
    /// this is the geometric NW/SE relation.
    fn nw_of(&self, other: &IndexedBox) -> bool {
        (self.row, self.col) < (other.row, other.col)
    }
}

/// Orders boxes by |c̃|, negatives first at equal |c̃|, SE first among
/// equal negative c̃ and NW first among equal nonnegative c̃.
pub fn index_boxes(boxes: &[(usize, usize)], p: &RectPair) -> Vec<IndexedBox> {
    let mut out: Vec<IndexedBox> = boxes
        .iter()
        .map(|&(row, col)| IndexedBox {
            row,
            col,
            content: content(row, col),
            shifted2: p.shifted2(row, col),
        })
        .collect();
    out.sort_by_key(|b| {
        let along = if b.shifted2 < 0 {
            -(b.row as i64)
        } else {
            b.row as i64
        };
        (b.shifted2.abs(), b.shifted2 >= 0, along)
    });
    out
}

/// J read off the indexed boxes (markings r1, r2 doubled and nonnegative).
pub fn j_from_boxes(boxes: &[IndexedBox], r1: i64, r2: i64) -> BTreeSet<Root> {
    let mut j_set = BTreeSet::new();
    for (i0, bi) in boxes.iter().enumerate() {
        let i = i0 + 1;
        if bi.shifted2 == -r1 || bi.shifted2 == -r2 {
            j_set.insert(Root::E(i));
        }
        for (j0, bj) in boxes.iter().enumerate().skip(i0 + 1) {
            let j = j0 + 1;
            let (xi, xj) = (bi.shifted2, bj.shifted2);
            let nw = bj.nw_of(bi);
            // at c̃ᵢ = 0 the pair is an inversion of w_S whatever the geometry
            let minus = (xj == xi + 2 && xj > 0 && nw)
                || (xj == xi - 2 && xj < 0 && (xi == 0 || !nw))
                || (xj == -xi - 2 && xj < 0 && xi > 0);
            if minus {
                j_set.insert(Root::Minus(i, j));
            }
            let plus = (xj == -2 && xi == 0 && !nw)
                || (xj == 1 && xi == -1 && nw)
                || (xj == -1 && xi == -1);
            if plus {
                j_set.insert(Root::Plus(i, j));
            }
        }
    }
    j_set
}

/// The output of λ ↦ (z, c, J).
#[derive(Clone, Debug, Serialize)]
pub struct SchurWeylRegion {
    pub lambda: Partition,
    pub k: usize,
    pub s0max: Partition,
    /// Boxes of λ/S⁽⁰⁾_max in index order.
    pub boxes: Vec<IndexedBox>,
    /// 2c₀; z = (−1)^k q^{2c₀}.
    pub q_power: i64,
    pub z: Scalar,
    pub region: LocalRegion,
    /// w_S for the path filling λ/S⁽⁰⁾_max in reading order.
    pub reading_path_w: SignedPermutation,
    /// Result of the skewness check, run when k is within the enumeration bound.
    pub skew: Option<bool>,
}

/// The reading-order path from S⁽⁰⁾ to λ: rows top to bottom, each row
/// left to right.
pub fn reading_path(s0: &Partition, lambda: &Partition) -> Path {
    let mut shapes = vec![s0.clone()];
    for b in lambda.skew_boxes(s0) {
        let next = shapes
            .last()
            .expect("nonempty")
            .add_box_at(b)
            .expect("reading order adds corners");
        shapes.push(next);
    }
    Path { shapes }
}

/// λ ↦ (z, c, J) under the genericity conditions. J comes from the box
/// rule and is checked against R(w_S) ∩ P(c) for the reading-order path.
pub fn lambda_to_zcj(lambda: &Partition, p: &RectPair, k: usize) -> Result<SchurWeylRegion> {
    p.check_generic()?;
    lambda_region(lambda, p, k)
}

/// The combinatorial part of λ ↦ (z, c, J), without the genericity check.
pub fn lambda_region(lambda: &Partition, p: &RectPair, k: usize) -> Result<SchurWeylRegion> {
    let level = p.level_of(lambda)?;
    if level != k {
        return Err(Error::NotReachable(format!(
            "{lambda} sits at level {level}, not {k}"
        )));
    }
    let s0 = s0max(lambda, p)?;
    let boxes = index_boxes(&lambda.skew_boxes(&s0), p);
    let c: Vec<i64> = boxes.iter().map(|b| b.shifted2.abs()).collect();
    let content = p.content_vector(c)?;
    let j_set = j_from_boxes(&boxes, p.r1(), p.r2());
    let region = LocalRegion::new(content.clone(), j_set)?;

    let path = reading_path(&s0, lambda);
    let w = path_to_w(&path, p)?;
    let via_w: BTreeSet<Root> = inversion_set(&w)
        .intersection(&region.p())
        .copied()
        .collect();
    if via_w != region.j {
        return Err(Error::InconsistentPath(format!(
            "J from the boxes {:?} differs from R(w_S) ∩ P(c) = {:?}",
            region.j, via_w
        )));
    }

    let (a, cc, b, d) = (p.a as i64, p.c as i64, p.b as i64, p.d as i64);
    let q_power =
        -(k as i64 * p.shift() + a * cc * (a - cc) + b * d * (b - d)) + 2 * lambda.content_sum();
    let sign = if k.is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    };
    let z = &sign * &p.q.pow(q_power)?;

    let skew = if k <= weyl::max_k() {
        Some(regions::is_skew(&region)?)
    } else {
        None
    };
    if skew == Some(false) {
        return Err(Error::InconsistentRegion(format!(
            "the region for {lambda} is not skew"
        )));
    }
    Ok(SchurWeylRegion {
        lambda: lambda.clone(),
        k,
        s0max: s0,
        boxes,
        q_power,
        z,
        region,
        reading_path_w: w,
        skew,
    })
}

/// w_S from the box indexing of λ/S⁽⁰⁾: w_S(i) = sgn(c̃(boxᵢ))·(entry of
/// boxᵢ). Checked against the minimal coset representative sending c to
/// the sequence of shifted contents along S.
pub fn path_to_w(path: &Path, p: &RectPair) -> Result<SignedPermutation> {
    path.validate(p)?;
    let added = path.added_boxes();
    let entry: BTreeMap<(usize, usize), i32> = added
        .iter()
        .enumerate()
        .map(|(n, &b)| (b, n as i32 + 1))
        .collect();
    let boxes = index_boxes(&added, p);
    let window: Vec<i32> = boxes
        .iter()
        .map(|b| {
            let e = entry[&(b.row, b.col)];
            if b.shifted2 < 0 {
                -e
            } else {
                e
            }
        })
        .collect();
    let w = SignedPermutation::new(window)?;
    let c: Vec<i64> = boxes.iter().map(|b| b.shifted2.abs()).collect();
    let target = path.shifted2(p);
    let minimal = weyl::min_coset_rep(&c, &target)?;
    if minimal != w {
        return Err(Error::InconsistentPath(format!(
            "box indexing gives {w} but the minimal element sending c to {target:?} is {minimal}"
        )));
    }
    Ok(w)
}

/// κ = rot(λ/S⁽⁰⁾_max) ∪ λ/S⁽⁰⁾_max, with markings at the NE corner of the
/// south block B′ (diagonal −r₁), the NE corner of the east block B
/// (diagonal r₂) and their rotations.
pub fn configuration_from_lambda(
    lambda: &Partition,
    p: &RectPair,
    k: usize,
) -> Result<BoxConfiguration> {
    let data = lambda_to_zcj(lambda, p, k)?;
    let content = data.region.content.clone();
    let s = p.shift();
    // position along the NW→SE axis, in the units of the configuration
    let pos = |row: usize, col: usize| 2 * (row + col) as i64 - s;
    let mut rows: BTreeMap<i32, i64> = BTreeMap::new();
    // (doubled diagonal, position) of every drawn box
    let mut drawn: Vec<(i64, i64)> = Vec::new();
    for (n, b) in data.boxes.iter().enumerate() {
        let label = if b.shifted2 < 0 {
            -(n as i32 + 1)
        } else {
            n as i32 + 1
        };
        rows.insert(label, b.row as i64);
        rows.insert(-label, -(b.row as i64));
        drawn.push((b.shifted2, pos(b.row, b.col)));
        drawn.push((-b.shifted2, -pos(b.row, b.col)));
    }
    let g = p.geometry();
    let south = (2 * (g.lo as i64 - g.c as i64) - s, pos(g.c + 1, g.lo));
    let east = (2 * (g.hi + g.lo) as i64 - s, pos(1, g.hi + g.lo));
    let marks = content.marks();
    let mut corners = Vec::new();
    for (diag, at) in [south, east] {
        if !marks.contains(&diag.abs()) {
            return Err(Error::InconsistentRegion(format!(
                "block corner on diagonal {} is not a marked diagonal",
                regions::format_half(diag)
            )));
        }
        corners.push((diag, at));
        corners.push((-diag, -at));
    }
    let before: BTreeMap<i64, usize> = corners
        .iter()
        .map(|&(diag, at)| {
            (
                diag,
                drawn.iter().filter(|&&(d, x)| d == diag && x < at).count(),
            )
        })
        .collect();
    BoxConfiguration::from_geometry(content, &rows, &before)
}

/// Both sides of Σ_λ |T_k^λ| dim L(λ) = dim L(a^c) · dim L(b^d) · n^k for gl_n.
#[derive(Clone, Debug, Serialize)]
pub struct DimensionIdentity {
    pub n: usize,
    pub k: usize,
    #[serde(serialize_with = "as_decimal")]
    pub lhs: BigInt,
    #[serde(serialize_with = "as_decimal")]
    pub rhs: BigInt,
    pub terms: Vec<DimensionTerm>,
}

/// One summand: λ, |T_k^λ| and dim L(λ).
#[derive(Clone, Debug, Serialize)]
pub struct DimensionTerm {
    pub lambda: Partition,
    pub paths: u64,
    #[serde(serialize_with = "as_decimal")]
    pub dim: BigInt,
}

fn as_decimal<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl DimensionIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn dimension_identity(p: &RectPair, n: usize, k: usize) -> Result<DimensionIdentity> {
    let d = bratteli_bounded(p, k, Some(n))?;
    let terms: Vec<DimensionTerm> = d.levels[k]
        .iter()
        .map(|v| {
            Ok(DimensionTerm {
                lambda: v.shape.clone(),
                paths: v.paths,
                dim: dim_gl(&v.shape, n)?,
            })
        })
        .collect::<Result<_>>()?;
    let lhs = terms.iter().map(|t| BigInt::from(t.paths) * &t.dim).sum();
    let factor = |w: usize, h: usize| {
        if h > n {
            Ok(BigInt::from(0))
        } else {
            dim_gl(&Partition::rectangle(w, h), n)
        }
    };
    let rhs = factor(p.a, p.c)? * factor(p.b, p.d)? * BigInt::from(n).pow(k as u32);
    Ok(DimensionIdentity {
        n,
        k,
        lhs,
        rhs,
        terms,
    })
}
