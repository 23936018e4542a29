//! The rectangle pair (a^c, b^d), the level-0 decomposition of the tensor
//! product, and the Bratteli diagram of box additions.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hecke::HeckeParams;
use crate::regions::ContentVector;
use crate::scalar::Scalar;
use crate::schurweyl::partition::{add_box_expansion, content, Partition};
use crate::weyl;

/// M = L(a^c), N = L(b^d) at t^{1/2} = q.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectPair {
    pub a: usize,
    pub c: usize,
    pub b: usize,
    pub d: usize,
    pub q: Scalar,
}

/// The rectangle pair with c ≥ d, as used to draw level 0.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Geometry {
    pub a: usize,
    pub c: usize,
    pub d: usize,
    /// max(a, b) and min(a, b).
    pub hi: usize,
    pub lo: usize,
}

impl RectPair {
    pub fn new(a: usize, c: usize, b: usize, d: usize, q: Scalar) -> Result<Self> {
        if [a, c, b, d].contains(&0) {
            return Err(Error::GenericityViolated(
                "a, c, b, d must be positive".into(),
            ));
        }
        Ok(RectPair { a, c, b, d, q })
    }

    /// Parses "a,c,b,d".
    pub fn parse(s: &str, q: Scalar) -> Result<Self> {
        let v: Vec<usize> = s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("rectangle entry {x:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        match v.as_slice() {
            &[a, c, b, d] => RectPair::new(a, c, b, d, q),
            _ => Err(Error::Parse(format!("expected a,c,b,d, got {s:?}"))),
        }
    }

    pub fn params(&self) -> Result<HeckeParams> {
        let (a, c, b, d) = (self.a as i64, self.c as i64, self.b as i64, self.d as i64);
        HeckeParams::from_rect(self.q.clone(), a, c, b, d)
    }

    /// (a + c) − (b + d) ∉ {0, ±1, ±2} and the parameter conditions.
    pub fn check_generic(&self) -> Result<()> {
        let diff = (self.a + self.c) as i64 - (self.b + self.d) as i64;
        if diff.abs() <= 2 {
            return Err(Error::GenericityViolated(format!(
                "(a+c)-(b+d) = {diff} lies in {{0, ±1, ±2}}"
            )));
        }
        self.params()?.check_generic()
    }

    /// a − c + b − d, twice the content shift.
    pub fn shift(&self) -> i64 {
        self.a as i64 - self.c as i64 + self.b as i64 - self.d as i64
    }

    /// Doubled |r₁| = |(a + c) − (b + d)|.
    pub fn r1(&self) -> i64 {
        ((self.a + self.c) as i64 - (self.b + self.d) as i64).abs()
    }

    /// Doubled r₂ = a + c + b + d.
    pub fn r2(&self) -> i64 {
        (self.a + self.c + self.b + self.d) as i64
    }

    /// A content vector carrying the markings of this pair.
    pub fn content_vector(&self, c: Vec<i64>) -> Result<ContentVector> {
        ContentVector::new(c, Some(self.r1()), Some(self.r2()))
    }

    /// Doubled shifted content 2c̃ = 2c − (a − c + b − d).
    pub fn shifted2(&self, row: usize, col: usize) -> i64 {
        2 * content(row, col) - self.shift()
    }

    /// True when c < d, so level 0 is drawn with the rectangles exchanged.
    pub fn swapped(&self) -> bool {
        self.c < self.d
    }

    pub(crate) fn geometry(&self) -> Geometry {
        let (a, c, b, d) = if self.swapped() {
            (self.b, self.d, self.a, self.c)
        } else {
            (self.a, self.c, self.b, self.d)
        };
        Geometry {
            a,
            c,
            d,
            hi: a.max(b),
            lo: a.min(b),
        }
    }

    /// |(a^c)| + |(b^d)|, the size of every level-0 partition.
    pub fn base_size(&self) -> usize {
        self.a * self.c + self.b * self.d
    }

    /// The level j with |λ| = ac + bd + j.
    pub fn level_of(&self, lambda: &Partition) -> Result<usize> {
        lambda.size().checked_sub(self.base_size()).ok_or_else(|| {
            Error::NotReachable(format!(
                "{lambda} has fewer than {} boxes",
                self.base_size()
            ))
        })
    }

    /// The level −1 vertex (a^c).
    pub fn root(&self) -> Partition {
        Partition::rectangle(self.a, self.c)
    }

    /// e₀(μ̊) = Σ c(μ̊) − Σ c(a^c) − Σ c(b^d).
    pub fn e0(&self, shape: &Partition) -> i64 {
        let (a, c, b, d) = (self.a as i64, self.c as i64, self.b as i64, self.d as i64);
        shape.content_sum() - a * c * (a - c) / 2 - b * d * (b - d) / 2
    }
}

/// The level-0 partition for μ ⊆ (lo^d): rows 1..d are hi + μᵢ, rows
/// d+1..c are a, rows c+i are lo − μ_{d+1−i}.
pub(crate) fn mu_ring(g: Geometry, mu: &Partition) -> Partition {
    let mut parts = Vec::with_capacity(g.c + g.d);
    parts.extend((0..g.d).map(|i| g.hi + mu.part(i)));
    parts.extend((g.d..g.c).map(|_| g.a));
    parts.extend((1..=g.d).map(|i| g.lo - mu.part(g.d - i)));
    Partition::new(parts).expect("level-0 shapes are partitions")
}

/// A level-0 vertex μ̊ with its e₀ label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Level0Vertex {
    pub shape: Partition,
    pub mu: Partition,
    pub e0: i64,
}

/// The decomposition L(a^c) ⊗ L(b^d) = ⊕ L(μ̊), one vertex per μ ⊆ (lo^d),
/// in lexicographic order of μ.
pub fn rect_tensor(p: &RectPair) -> Vec<Level0Vertex> {
    let g = p.geometry();
    Partition::all_in_box(g.lo, g.d)
        .into_iter()
        .map(|mu| {
            let shape = mu_ring(g, &mu);
            Level0Vertex {
                e0: p.e0(&shape),
                shape,
                mu,
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct BratteliVertex {
    pub shape: Partition,
    /// Number of paths from level −1.
    pub paths: u64,
}

/// An edge between consecutive levels, with its label: e₀ for the edges
/// out of level −1, the content of the added box otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BratteliEdge {
    pub from: usize,
    pub to: usize,
    pub label: i64,
}

/// Levels 0..=k (level −1 is the single vertex `root`). `edges[j]` joins
/// level j−1 to level j, with `edges[0]` leaving the root.
#[derive(Clone, Debug, Serialize)]
pub struct BratteliDiagram {
    pub rect: RectPair,
    pub k: usize,
    pub row_bound: Option<usize>,
    /// Set when c < d and level 0 was drawn with the rectangles exchanged.
    pub note: Option<String>,
    pub root: Partition,
    pub levels: Vec<Vec<BratteliVertex>>,
    pub edges: Vec<Vec<BratteliEdge>>,
}

/// The diagram up to level k.
pub fn bratteli(p: &RectPair, k: usize) -> Result<BratteliDiagram> {
    bratteli_bounded(p, k, None)
}

/// The diagram up to level k, keeping only partitions with at most
/// `row_bound` rows when a bound is given.
pub fn bratteli_bounded(
    p: &RectPair,
    k: usize,
    row_bound: Option<usize>,
) -> Result<BratteliDiagram> {
    let bound = weyl::max_k();
    if k > bound {
        return Err(Error::BoundExceeded { k, bound });
    }
    let fits = |s: &Partition| row_bound.is_none_or(|n| s.rows() <= n);
    let mut levels = Vec::with_capacity(k + 1);
    let mut edges = Vec::with_capacity(k + 1);
    let level0: Vec<Level0Vertex> = rect_tensor(p)
        .into_iter()
        .filter(|v| fits(&v.shape))
        .collect();
    edges.push(
        level0
            .iter()
            .enumerate()
            .map(|(n, v)| BratteliEdge {
                from: 0,
                to: n,
                label: v.e0,
            })
            .collect(),
    );
    levels.push(
        level0
            .into_iter()
            .map(|v| BratteliVertex {
                shape: v.shape,
                paths: 1,
            })
            .collect::<Vec<_>>(),
    );
    for _ in 0..k {
        let prev: &Vec<BratteliVertex> = levels.last().expect("level 0 exists");
        let mut next: Vec<BratteliVertex> = Vec::new();
        let mut index: HashMap<Partition, usize> = HashMap::new();
        let mut es = Vec::new();
        for (from, v) in prev.iter().enumerate() {
            for (shape, label) in add_box_expansion(&v.shape, row_bound) {
                let to = *index.entry(shape.clone()).or_insert_with(|| {
                    next.push(BratteliVertex { shape, paths: 0 });
                    next.len() - 1
                });
                next[to].paths += v.paths;
                es.push(BratteliEdge { from, to, label });
            }
        }
        levels.push(next);
        edges.push(es);
    }
    let note = p
        .swapped()
        .then(|| "c < d: level 0 drawn with (a^c) and (b^d) exchanged".to_string());
    Ok(BratteliDiagram {
        rect: p.clone(),
        k,
        row_bound,
        note,
        root: p.root(),
        levels,
        edges,
    })
}

/// A path (a^c) → S⁽⁰⁾ → S⁽¹⁾ → … → S⁽ᵏ⁾, stored from S⁽⁰⁾ on.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Path {
    pub shapes: Vec<Partition>,
}

impl Path {
    pub fn k(&self) -> usize {
        self.shapes.len() - 1
    }

    pub fn s0(&self) -> &Partition {
        &self.shapes[0]
    }

    pub fn lambda(&self) -> &Partition {
        self.shapes.last().expect("paths are nonempty")
    }

    /// The box S⁽ⁱ⁾/S⁽ⁱ⁻¹⁾ for i = 1..k, as 1-based (row, column).
    pub fn added_boxes(&self) -> Vec<(usize, usize)> {
        self.shapes
            .windows(2)
            .map(|w| {
                let b = w[1].skew_boxes(&w[0]);
                debug_assert_eq!(b.len(), 1);
                b[0]
            })
            .collect()
    }

    /// c(S⁽ⁱ⁾/S⁽ⁱ⁻¹⁾) for i = 1..k.
    pub fn contents(&self) -> Vec<i64> {
        self.added_boxes()
            .into_iter()
            .map(|(r, c)| content(r, c))
            .collect()
    }

    /// Doubled shifted contents 2c̃(S⁽ⁱ⁾/S⁽ⁱ⁻¹⁾).
    pub fn shifted2(&self, p: &RectPair) -> Vec<i64> {
        self.added_boxes()
            .into_iter()
            .map(|(r, c)| p.shifted2(r, c))
            .collect()
    }

    /// Checks that S⁽⁰⁾ is a level-0 vertex and each step adds one box.
    pub fn validate(&self, p: &RectPair) -> Result<()> {
        if self.shapes.is_empty() {
            return Err(Error::InconsistentPath("empty path".into()));
        }
        if !rect_tensor(p).iter().any(|v| &v.shape == self.s0()) {
            return Err(Error::InconsistentPath(format!(
                "{} is not a level-0 vertex",
                self.s0()
            )));
        }
        for (j, w) in self.shapes.windows(2).enumerate() {
            if !(w[1].contains(&w[0]) && w[1].size() == w[0].size() + 1) {
                return Err(Error::InconsistentPath(format!(
                    "step {} from {} to {} is not one box",
                    j + 1,
                    w[0],
                    w[1]
                )));
            }
        }
        Ok(())
    }

    /// The path as S⁽⁰⁾ followed by the added boxes, e.g. "(6,3)+(1,7)+(2,4)".
    pub fn label(&self) -> String {
        let mut s = self.s0().to_text();
        for (r, c) in self.added_boxes() {
            let _ = write!(s, "+({r},{c})");
        }
        s
    }

    /// The box-moving path s_jS: for j ≥ 1 it differs from S only at S⁽ʲ⁾,
    /// for j = 0 only at S⁽⁰⁾. None when no such path exists.
    pub fn s_move(&self, j: usize, level0: &BTreeSet<Partition>) -> Option<Path> {
        let k = self.k();
        if j >= k {
            return None;
        }
        let replacement = if j == 0 {
            let s1 = &self.shapes[1];
            let mut alts = s1
                .removable_rows()
                .into_iter()
                .filter_map(|r| s1.remove_box(r))
                .filter(|v| v != self.s0() && level0.contains(v));
            let alt = alts.next()?;
            debug_assert!(alts.next().is_none(), "the level-0 move is unique");
            alt
        } else {
            let boxes = self.added_boxes();
            let alt = self.shapes[j - 1].add_box_at(boxes[j])?;
            // the old box must still be addable afterwards
            alt.add_box_at(boxes[j - 1])?;
            alt
        };
        let mut shapes = self.shapes.clone();
        shapes[j] = replacement;
        Some(Path { shapes })
    }
}

impl BratteliDiagram {
    pub fn level_sizes(&self) -> Vec<usize> {
        std::iter::once(1)
            .chain(self.levels.iter().map(Vec::len))
            .collect()
    }

    pub fn find(&self, level: usize, shape: &Partition) -> Option<usize> {
        self.levels
            .get(level)?
            .iter()
            .position(|v| &v.shape == shape)
    }

    /// The set of level-0 shapes.
    pub fn level0(&self) -> BTreeSet<Partition> {
        self.levels[0].iter().map(|v| v.shape.clone()).collect()
    }

    /// T_k^λ by walking the edges backwards from λ.
    pub fn paths_to(&self, lambda: &Partition) -> Result<Vec<Path>> {
        let level = self.rect.level_of(lambda)?;
        if level > self.k {
            return Err(Error::NotReachable(format!(
                "{lambda} sits at level {level}, beyond k = {}",
                self.k
            )));
        }
        let Some(end) = self.find(level, lambda) else {
            return Err(Error::NotReachable(format!(
                "{lambda} is not in the diagram"
            )));
        };
        let incoming: Vec<BTreeMap<usize, Vec<usize>>> = self
            .edges
            .iter()
            .map(|es| {
                let mut m: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
                for e in es {
                    m.entry(e.to).or_default().push(e.from);
                }
                m
            })
            .collect();
        let mut out = Vec::new();
        let mut stack = vec![end];
        self.walk_back(level, &incoming, &mut stack, &mut out);
        out.sort();
        Ok(out)
    }

    fn walk_back(
        &self,
        level: usize,
        incoming: &[BTreeMap<usize, Vec<usize>>],
        stack: &mut Vec<usize>,
        out: &mut Vec<Path>,
    ) {
        if level == 0 {
            let shapes = stack
                .iter()
                .rev()
                .enumerate()
                .map(|(l, &v)| self.levels[l][v].shape.clone())
                .collect();
            out.push(Path { shapes });
            return;
        }
        let here = *stack.last().expect("nonempty");
        for &from in incoming[level].get(&here).into_iter().flatten() {
            stack.push(from);
            self.walk_back(level - 1, incoming, stack, out);
            stack.pop();
        }
    }

    /// Graphviz rendering; vertices are part lists, edge labels are e₀ values
    /// and contents.
    pub fn to_dot(&self) -> String {
        let mut s = String::from(
            "digraph bratteli {\n  rankdir=TB;\n  node [shape=box, fontname=\"monospace\"];\n",
        );
        let _ = writeln!(s, "  root [label=\"{}\"];", self.root);
        for (l, vs) in self.levels.iter().enumerate() {
            let _ = write!(s, "  {{ rank=same;");
            for n in 0..vs.len() {
                let _ = write!(s, " v{l}_{n};");
            }
            s.push_str(" }\n");
            for (n, v) in vs.iter().enumerate() {
                let _ = writeln!(s, "  v{l}_{n} [label=\"{}\"];", v.shape);
            }
        }
        for (l, es) in self.edges.iter().enumerate() {
            for e in es {
                let from = if l == 0 {
                    "root".to_string()
                } else {
                    format!("v{}_{}", l - 1, e.from)
                };
                let _ = writeln!(s, "  {from} -> v{l}_{} [label=\"{}\"];", e.to, e.label);
            }
        }
        s.push_str("}\n");
        s
    }

    /// A plain-text listing, one level per block.
    pub fn to_text(&self) -> String {
        let mut s = format!("level -1: {}\n", self.root);
        for (l, vs) in self.levels.iter().enumerate() {
            let _ = writeln!(s, "level {l}: {} vertices", vs.len());
            for (n, v) in vs.iter().enumerate() {
                let labels: Vec<String> = self.edges[l]
                    .iter()
                    .filter(|e| e.to == n)
                    .map(|e| e.label.to_string())
                    .collect();
                let _ = writeln!(
                    s,
                    "  {}  paths={}  in-labels=[{}]",
                    v.shape,
                    v.paths,
                    labels.join(",")
                );
            }
        }
        if let Some(note) = &self.note {
            let _ = writeln!(s, "note: {note}");
        }
        s
    }
}

/// T_k^λ without building the whole diagram: boxes are removed from λ while
/// the shape still contains a level-0 vertex.
pub fn paths_to_lambda(lambda: &Partition, p: &RectPair) -> Result<Vec<Path>> {
    let k = p.level_of(lambda)?;
    let level0: Vec<Partition> = rect_tensor(p).into_iter().map(|v| v.shape).collect();
    fn rec(
        shape: &Partition,
        left: usize,
        level0: &[Partition],
        suffix: &mut Vec<Partition>,
        out: &mut Vec<Path>,
    ) {
        if left == 0 {
            if level0.contains(shape) {
                let mut shapes = vec![shape.clone()];
                shapes.extend(suffix.iter().rev().cloned());
                out.push(Path { shapes });
            }
            return;
        }
        suffix.push(shape.clone());
        for r in shape.removable_rows() {
            let smaller = shape.remove_box(r).expect("removable");
            if level0.iter().any(|v| smaller.contains(v)) {
                rec(&smaller, left - 1, level0, suffix, out);
            }
        }
        suffix.pop();
    }
    let mut out = Vec::new();
    rec(lambda, k, &level0, &mut Vec::new(), &mut out);
    if out.is_empty() {
        return Err(Error::NotReachable(format!(
            "{lambda} contains no level-0 partition"
        )));
    }
    out.sort();
    Ok(out)
}
