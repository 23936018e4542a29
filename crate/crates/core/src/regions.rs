//! Local regions (c, J): the sets Z(c) and P(c), standard tableaux F^{(c,J)},
//! the skew test, box configurations with markings, and standard fillings.
//!
//! All contents are stored doubled, so c ∈ ℤ^k and c ∈ (ℤ+½)^k both live in
//! `i64` vectors (even and odd entries respectively).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::weyl::{self, inversion_set, Root, SignedPermutation};

/// Prints a doubled value as an integer or as "p/2".
pub fn format_half(d: i64) -> String {
    if d % 2 == 0 {
        (d / 2).to_string()
    } else {
        format!("{d}/2")
    }
}

/// Parses "3", "-3/2" or "1/2" into a doubled integer.
pub fn parse_half(s: &str) -> Result<i64> {
    let t = s.trim();
    let bad = || Error::Parse(format!("expected an integer or p/2, got '{s}'"));
    if let Some((p, q)) = t.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        match q.trim() {
            "2" => Ok(p),
            "1" => Ok(2 * p),
            _ => Err(bad()),
        }
    } else {
        Ok(2 * t.parse::<i64>().map_err(|_| bad())?)
    }
}

/// Parses a comma separated list of (half-)integers into doubled values.
pub fn parse_half_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(parse_half)
        .collect()
}

/// A content vector c (doubled) with the marked diagonals r₁, r₂ (doubled).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawContent")]
pub struct ContentVector {
    pub c: Vec<i64>,
    pub r1: Option<i64>,
    pub r2: Option<i64>,
}

#[derive(Deserialize)]
struct RawContent {
    c: Vec<i64>,
    #[serde(default)]
    r1: Option<i64>,
    #[serde(default)]
    r2: Option<i64>,
}

impl TryFrom<RawContent> for ContentVector {
    type Error = Error;
    fn try_from(r: RawContent) -> Result<Self> {
        ContentVector::new(r.c, r.r1, r.r2)
    }
}

impl ContentVector {
    pub fn new(c: Vec<i64>, r1: Option<i64>, r2: Option<i64>) -> Result<Self> {
        if let Some(&first) = c.first() {
            if c.iter().any(|&x| (x - first).rem_euclid(2) != 0) {
                return Err(Error::InvalidContent(format!(
                    "entries of {c:?} (doubled) must all be even or all be odd"
                )));
            }
        }
        if r1 == Some(0) || r2 == Some(0) {
            return Err(Error::InvalidContent(
                "a marking on diagonal 0 is not generic".into(),
            ));
        }
        if let (Some(a), Some(b)) = (r1, r2) {
            if a.abs() == b.abs() {
                return Err(Error::InvalidContent(format!(
                    "markings r1 = {} and r2 = {} coincide up to sign",
                    format_half(a),
                    format_half(b)
                )));
            }
        }
        Ok(ContentVector { c, r1, r2 })
    }

    pub fn k(&self) -> usize {
        self.c.len()
    }

    /// c_i for signed i, with c_{−i} = −c_i.
    pub fn signed(&self, i: i32) -> i64 {
        let v = self.c[i.unsigned_abs() as usize - 1];
        if i < 0 {
            -v
        } else {
            v
        }
    }

    /// The marked diagonals |r₁|, |r₂| that are present, ascending.
    pub fn marks(&self) -> Vec<i64> {
        let mut m: Vec<i64> = [self.r1, self.r2]
            .into_iter()
            .flatten()
            .map(i64::abs)
            .collect();
        m.sort_unstable();
        m.dedup();
        m
    }

    pub fn is_canonical(&self) -> bool {
        self.c.iter().all(|&x| x >= 0) && self.c.windows(2).all(|p| p[0] <= p[1])
    }

    /// Sorted absolute values; the W₀-orbit representative with 0 ≤ c₁ ≤ … ≤ c_k.
    pub fn canonical(&self) -> Self {
        let mut c: Vec<i64> = self.c.iter().map(|x| x.abs()).collect();
        c.sort_unstable();
        ContentVector {
            c,
            r1: self.r1,
            r2: self.r2,
        }
    }

    pub fn to_text(&self) -> String {
        let c: Vec<String> = self.c.iter().map(|&x| format_half(x)).collect();
        let mark = |r: Option<i64>| r.map_or("-".to_string(), format_half);
        format!(
            "c=({}) r1={} r2={}",
            c.join(","),
            mark(self.r1),
            mark(self.r2)
        )
    }
}

/// The zero set Z(c).
pub fn z_set(c: &ContentVector) -> BTreeSet<Root> {
    let k = c.k();
    let mut out = BTreeSet::new();
    for j in 1..=k {
        if c.c[j - 1] == 0 {
            out.insert(Root::E(j));
        }
        for i in 1..j {
            let (ci, cj) = (c.c[i - 1], c.c[j - 1]);
            if cj - ci == 0 {
                out.insert(Root::Minus(i, j));
            }
            if cj + ci == 0 {
                out.insert(Root::Plus(i, j));
            }
        }
    }
    out
}

/// The boundary set P(c). Doubled adjacency is a difference of ±2.
pub fn p_set(c: &ContentVector) -> BTreeSet<Root> {
    let k = c.k();
    let marks = c.marks();
    let mut out = BTreeSet::new();
    for j in 1..=k {
        if marks.contains(&c.c[j - 1].abs()) {
            out.insert(Root::E(j));
        }
        for i in 1..j {
            let (ci, cj) = (c.c[i - 1], c.c[j - 1]);
            if (cj - ci).abs() == 2 {
                out.insert(Root::Minus(i, j));
            }
            if (cj + ci).abs() == 2 {
                out.insert(Root::Plus(i, j));
            }
        }
    }
    out
}

/// A local region (c, J) with J ⊆ P(c).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawRegion")]
pub struct LocalRegion {
    #[serde(flatten)]
    pub content: ContentVector,
    #[serde(rename = "J")]
    pub j: BTreeSet<Root>,
}

#[derive(Deserialize)]
struct RawRegion {
    c: Vec<i64>,
    #[serde(default)]
    r1: Option<i64>,
    #[serde(default)]
    r2: Option<i64>,
    #[serde(rename = "J", default)]
    j: BTreeSet<Root>,
}

impl TryFrom<RawRegion> for LocalRegion {
    type Error = Error;
    fn try_from(r: RawRegion) -> Result<Self> {
        LocalRegion::new(ContentVector::new(r.c, r.r1, r.r2)?, r.j)
    }
}

impl LocalRegion {
    pub fn new(content: ContentVector, j: BTreeSet<Root>) -> Result<Self> {
        let p = p_set(&content);
        let extra: Vec<String> = j
            .iter()
            .filter(|r| !p.contains(r))
            .map(Root::to_string)
            .collect();
        if !extra.is_empty() {
            return Err(Error::NotSubsetOfP(extra.join(", ")));
        }
        Ok(LocalRegion { content, j })
    }

    pub fn k(&self) -> usize {
        self.content.k()
    }

    pub fn z(&self) -> BTreeSet<Root> {
        z_set(&self.content)
    }

    pub fn p(&self) -> BTreeSet<Root> {
        p_set(&self.content)
    }

    /// All regions (c, J) over subsets J ⊆ P(c).
    pub fn all_for(content: &ContentVector) -> Vec<LocalRegion> {
        let p: Vec<Root> = p_set(content).into_iter().collect();
        (0u64..1 << p.len())
            .map(|mask| {
                let j = p
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, r)| *r)
                    .collect();
                LocalRegion {
                    content: content.clone(),
                    j,
                }
            })
            .collect()
    }
}

/// Membership test w ∈ F^{(c,J)}.
pub fn in_region(region: &LocalRegion, w: &SignedPermutation) -> bool {
    if w.k() != region.k() {
        return false;
    }
    let r = inversion_set(w);
    let z = region.z();
    if r.iter().any(|a| z.contains(a)) {
        return false;
    }
    let p = region.p();
    r.iter()
        .filter(|a| p.contains(a))
        .copied()
        .collect::<BTreeSet<_>>()
        == region.j
}

/// F^{(c,J)} by filtering all of W₀; sorted by window.
pub fn standard_tableaux(region: &LocalRegion) -> Result<Vec<SignedPermutation>> {
    standard_tableaux_with(region, Exec::default())
}

pub fn standard_tableaux_with(region: &LocalRegion, exec: Exec) -> Result<Vec<SignedPermutation>> {
    let k = region.k();
    let bound = weyl::max_k();
    if k > bound {
        return Err(Error::BoundExceeded { k, bound });
    }
    let mut out = par::flat_map(exec, weyl::permutations(k), |p| {
        weyl::signings(p, k)
            .filter(|w| in_region(region, w))
            .collect()
    });
    out.sort();
    Ok(out)
}

/// F^{(c,J)} through the filling bijection; works for any k. Sorted by window.
pub fn region_members(region: &LocalRegion) -> Result<Vec<SignedPermutation>> {
    let canon = region.content.canonical();
    if canon != region.content {
        // fillings need the canonical ordering; fall back to the brute-force filter
        return standard_tableaux(region);
    }
    let kappa = match configuration(region) {
        Ok(kappa) => kappa,
        // contradictory order constraints: no chamber realizes this J
        Err(Error::InconsistentRegion(_)) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    let mut out: Vec<SignedPermutation> =
        standard_fillings(&kappa).iter().map(|s| s.to_w()).collect();
    out.sort();
    Ok(out)
}

/// The first skewness condition violated by wc, if any.
pub fn skew_violation(c: &[i64], w: &SignedPermutation) -> Option<String> {
    let v = weyl::act_on_weight(w, &weyl::WeightVector::new(c.to_vec()))
        .ok()?
        .c;
    let k = v.len();
    let fmt = |i: usize| format_half(v[i]);
    if k >= 1 && v[0] == 0 {
        return Some("(wc)_1 = 0".into());
    }
    if k >= 2 && v[1] == 0 {
        return Some("(wc)_2 = 0".into());
    }
    if k >= 2 && v[0] == -v[1] {
        return Some(format!("(wc)_1 = -(wc)_2 = {}", fmt(0)));
    }
    for i in 0..k {
        if i + 1 < k && v[i] == v[i + 1] {
            return Some(format!("(wc)_{} = (wc)_{} = {}", i + 1, i + 2, fmt(i)));
        }
        if i + 2 < k && v[i] == v[i + 2] {
            return Some(format!("(wc)_{} = (wc)_{} = {}", i + 1, i + 3, fmt(i)));
        }
    }
    None
}

/// True iff every w ∈ F^{(c,J)} passes the skewness conditions. An empty
/// region counts as not skew.
pub fn is_skew(region: &LocalRegion) -> Result<bool> {
    let members = region_members(region)?;
    Ok(!members.is_empty()
        && members
            .iter()
            .all(|w| skew_violation(&region.content.c, w).is_none()))
}

/// A box of a configuration.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlacedBox {
    pub label: i32,
    /// Doubled diagonal number.
    pub diagonal: i64,
    /// Position along the diagonal, 0 = most northwest.
    pub rank: usize,
    /// Row used for drawing only.
    pub row: i64,
}

/// A marking on a diagonal, sitting after `before` boxes counted from the NW end.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Marking {
    pub diagonal: i64,
    pub before: usize,
}

/// A configuration κ of 2k boxes. Equality compares diagonals, ranks,
/// markings and the NW relation between boxes on adjacent diagonals, so the
/// free sliding of box_i past box_{−i} on the diagonals ±½ is quotiented out.
#[derive(Clone, Debug, Serialize)]
pub struct BoxConfiguration {
    pub content: ContentVector,
    pub boxes: Vec<PlacedBox>,
    pub markings: Vec<Marking>,
    /// Pairs (a, b): box_a is NW of box_b, on adjacent diagonals, b ≠ −a.
    pub nw: BTreeSet<(i32, i32)>,
}

impl PartialEq for BoxConfiguration {
    fn eq(&self, other: &Self) -> bool {
        let key = |b: &PlacedBox| (b.label, b.diagonal, b.rank);
        self.content == other.content
            && self.boxes.iter().map(key).eq(other.boxes.iter().map(key))
            && self.markings == other.markings
            && self.nw == other.nw
    }
}

impl Eq for BoxConfiguration {}

fn slot(k: usize, label: i32) -> usize {
    if label < 0 {
        (label + k as i32) as usize
    } else {
        (label + k as i32 - 1) as usize
    }
}

fn labels(k: usize) -> impl Iterator<Item = i32> {
    (-(k as i32)..=k as i32).filter(|&x| x != 0)
}

/// Whether box_a is NW of box_b according to J, for adjacent boxes a, b with
/// b ≠ −a. The pair is rotated so the larger index is positive, then read off
/// the root ε_j − ε_i or ε_j + ε_i.
fn pair_is_nw(j_set: &BTreeSet<Root>, a: i32, b: i32) -> bool {
    let (mut x, mut y, mut flip) = (a, b, false);
    if x.abs() < y.abs() {
        std::mem::swap(&mut x, &mut y);
        flip = !flip;
    }
    // now |x| > |y|: x plays the role of box_j
    if x < 0 {
        x = -x;
        y = -y;
        flip = !flip;
    }
    let (i, j) = (y.unsigned_abs() as usize, x as usize);
    let root = if y > 0 {
        Root::Minus(i, j)
    } else {
        Root::Plus(i, j)
    };
    // box_j NW of the other box iff the root is in J
    j_set.contains(&root) != flip
}

impl BoxConfiguration {
    pub fn k(&self) -> usize {
        self.content.k()
    }

    pub fn get(&self, label: i32) -> &PlacedBox {
        &self.boxes[slot(self.k(), label)]
    }

    /// Builds a configuration from drawn positions: `rows[label]` is the row of
    /// each box (its diagonal comes from the content vector), and `before`
    /// gives, for each marked signed diagonal, the number of boxes NW of the
    /// marking.
    pub fn from_geometry(
        content: ContentVector,
        rows: &BTreeMap<i32, i64>,
        before: &BTreeMap<i64, usize>,
    ) -> Result<Self> {
        let k = content.k();
        let mut boxes: Vec<PlacedBox> = labels(k)
            .map(|l| {
                let row = *rows
                    .get(&l)
                    .ok_or_else(|| Error::InconsistentRegion(format!("no row for box {l}")))?;
                Ok(PlacedBox {
                    label: l,
                    diagonal: content.signed(l),
                    rank: 0,
                    row,
                })
            })
            .collect::<Result<_>>()?;
        let mut by_diag: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (n, b) in boxes.iter().enumerate() {
            by_diag.entry(b.diagonal).or_default().push(n);
        }
        for members in by_diag.values_mut() {
            members.sort_by_key(|&n| boxes[n].row);
            for (r, &n) in members.iter().enumerate() {
                boxes[n].rank = r;
            }
            for w in members.windows(2) {
                let (a, b) = (&boxes[w[0]], &boxes[w[1]]);
                if a.row == b.row {
                    return Err(Error::InconsistentRegion(format!(
                        "boxes {} and {} overlap",
                        a.label, b.label
                    )));
                }
                if a.label > b.label {
                    return Err(Error::InconsistentRegion(format!(
                        "box {} is NW of box {} on a shared diagonal",
                        a.label, b.label
                    )));
                }
            }
        }
        let mut nw = BTreeSet::new();
        for a in &boxes {
            for b in &boxes {
                if a.label == -b.label || a.diagonal - b.diagonal != 2 {
                    continue;
                }
                // a sits one diagonal above b; compare positions along the NW-SE axis
                if 4 * a.row + a.diagonal < 4 * b.row + b.diagonal {
                    nw.insert((a.label, b.label));
                } else {
                    nw.insert((b.label, a.label));
                }
            }
        }
        let mut markings = Vec::new();
        for r in content.marks() {
            for d in [-r, r] {
                let n_on = by_diag.get(&d).map_or(0, Vec::len);
                let bf = before
                    .get(&d)
                    .copied()
                    .unwrap_or(if d < 0 { n_on } else { 0 });
                if bf > n_on {
                    return Err(Error::InconsistentRegion(format!(
                        "marking on {} past the last box",
                        format_half(d)
                    )));
                }
                markings.push(Marking {
                    diagonal: d,
                    before: bf,
                });
            }
        }
        markings.sort_by_key(|m| m.diagonal);
        Ok(BoxConfiguration {
            content,
            boxes,
            markings,
            nw,
        })
    }

    fn marking_on(&self, d: i64) -> Option<&Marking> {
        self.markings.iter().find(|m| m.diagonal == d)
    }

    /// Reads (Z(c), P(c), J) back off the configuration.
    pub fn reconstruct(&self) -> (BTreeSet<Root>, BTreeSet<Root>, BTreeSet<Root>) {
        let k = self.k();
        let (mut z, mut p, mut j) = (BTreeSet::new(), BTreeSet::new(), BTreeSet::new());
        for jj in 1..=k {
            let bj = self.get(jj as i32);
            if bj.diagonal == 0 {
                z.insert(Root::E(jj));
            }
            if let Some(m) = self.marking_on(bj.diagonal) {
                p.insert(Root::E(jj));
                if bj.rank < m.before {
                    j.insert(Root::E(jj));
                }
            }
            for ii in 1..jj {
                let bi = self.get(ii as i32);
                let bmi = self.get(-(ii as i32));
                if bi.diagonal == bj.diagonal {
                    z.insert(Root::Minus(ii, jj));
                }
                if bi.diagonal == 0 && bj.diagonal == 0 {
                    z.insert(Root::Plus(ii, jj));
                }
                if (bi.diagonal - bj.diagonal).abs() == 2 {
                    p.insert(Root::Minus(ii, jj));
                    if self.nw.contains(&(jj as i32, ii as i32)) {
                        j.insert(Root::Minus(ii, jj));
                    }
                }
                if (bmi.diagonal - bj.diagonal).abs() == 2 {
                    p.insert(Root::Plus(ii, jj));
                    if self.nw.contains(&(jj as i32, -(ii as i32))) {
                        j.insert(Root::Plus(ii, jj));
                    }
                }
            }
        }
        (z, p, j)
    }

    pub fn region(&self) -> LocalRegion {
        let (_, _, j) = self.reconstruct();
        LocalRegion {
            content: self.content.clone(),
            j,
        }
    }

    /// Strict order relations S(a) < S(b) required of a standard filling: the
    /// NW box of every same-diagonal or adjacent-diagonal pair gets the
    /// smaller value.
    pub fn order_edges(&self) -> Vec<(i32, i32)> {
        let mut by_diag: BTreeMap<i64, Vec<&PlacedBox>> = BTreeMap::new();
        for b in &self.boxes {
            by_diag.entry(b.diagonal).or_default().push(b);
        }
        let mut out = Vec::new();
        for members in by_diag.values_mut() {
            members.sort_by_key(|b| b.rank);
            for w in members.windows(2) {
                out.push((w[0].label, w[1].label));
            }
        }
        out.extend(self.nw.iter().copied());
        out
    }

    /// Sign forced by a marking: Some(true) for S < 0, Some(false) for S > 0.
    pub fn forced_sign(&self, label: i32) -> Option<bool> {
        let b = self.get(label);
        self.marking_on(b.diagonal).map(|m| b.rank < m.before)
    }

    pub fn is_standard(&self, s: &StandardFilling) -> bool {
        if s.values.len() != self.k() || SignedPermutation::new(s.values.clone()).is_err() {
            return false;
        }
        self.order_edges()
            .iter()
            .all(|&(a, b)| s.value(a) < s.value(b))
            && labels(self.k()).all(|l| match self.forced_sign(l) {
                Some(neg) => (s.value(l) < 0) == neg,
                None => true,
            })
    }

    /// Text drawing: one cell per box, labelled by `cell(label)`.
    pub fn render_with(&self, cell: impl Fn(i32) -> String) -> String {
        if self.boxes.is_empty() {
            return "(empty configuration)\n".to_string();
        }
        let col = |b: &PlacedBox| (2 * b.row + b.diagonal).div_euclid(2);
        let rmin = self.boxes.iter().map(|b| b.row).min().unwrap_or(0);
        let rmax = self.boxes.iter().map(|b| b.row).max().unwrap_or(0);
        let cmin = self.boxes.iter().map(col).min().unwrap_or(0);
        let cmax = self.boxes.iter().map(col).max().unwrap_or(0);
        let mut grid: BTreeMap<(i64, i64), String> = BTreeMap::new();
        for b in &self.boxes {
            grid.insert((b.row, col(b)), cell(b.label));
        }
        let mut out = String::new();
        for r in rmin..=rmax {
            let mut line = String::new();
            for c in cmin..=cmax {
                match grid.get(&(r, c)) {
                    Some(s) => {
                        let _ = write!(line, "{s:>4}");
                    }
                    None => line.push_str("   ."),
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        for m in &self.markings {
            let _ = writeln!(
                out,
                "marking on diagonal {} after {} box(es)",
                format_half(m.diagonal),
                m.before
            );
        }
        out
    }

    pub fn render_ascii(&self) -> String {
        self.render_with(|l| l.to_string())
    }

    /// DOT drawing with pinned positions; edges are the order relations.
    pub fn render_dot(&self) -> String {
        let mut out = String::from("digraph kappa {\n  node [shape=box];\n");
        for b in &self.boxes {
            let x2 = 2 * b.row + b.diagonal;
            let _ = writeln!(
                out,
                "  \"b{}\" [label=\"{}\", pos=\"{},{}!\", tooltip=\"diagonal {}\"];",
                b.label,
                b.label,
                x2 as f64 / 2.0,
                -b.row,
                format_half(b.diagonal)
            );
        }
        for (a, b) in self.order_edges() {
            let _ = writeln!(out, "  \"b{a}\" -> \"b{b}\";");
        }
        for m in &self.markings {
            let _ = writeln!(
                out,
                "  \"m{}\" [shape=point, color=red, xlabel=\"{} after {}\"];",
                m.diagonal,
                format_half(m.diagonal),
                m.before
            );
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for BoxConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_ascii())
    }
}

/// Solves difference constraints y_u − y_v ≤ w by Bellman-Ford from a virtual
/// source. None on a negative cycle.
fn solve_difference(n: usize, cons: &[(usize, usize, i64)]) -> Option<Vec<i64>> {
    let mut dist = vec![0i64; n];
    for round in 0..=n {
        let mut changed = false;
        for &(u, v, w) in cons {
            if dist[v] + w < dist[u] {
                dist[u] = dist[v] + w;
                changed = true;
            }
        }
        if !changed {
            let lo = dist.iter().copied().min().unwrap_or(0);
            return Some(dist.into_iter().map(|d| d - lo).collect());
        }
        if round == n {
            return None;
        }
    }
    None
}

/// The configuration κ of a region with canonical c.
pub fn configuration(region: &LocalRegion) -> Result<BoxConfiguration> {
    let content = &region.content;
    if !content.is_canonical() {
        return Err(Error::InvalidContent(format!(
            "configuration needs 0 <= c_1 <= ... <= c_k, got {}",
            content.to_text()
        )));
    }
    let k = content.k();
    let all: Vec<i32> = labels(k).collect();
    let mut cons = Vec::new();
    for &a in &all {
        for &b in &all {
            let (da, db) = (content.signed(a), content.signed(b));
            if da == db && a < b {
                // a strictly north of b on the same diagonal: y_a − y_b ≤ −1 for
                // consecutive boxes (transitivity covers the rest)
                cons.push((slot(k, a), slot(k, b), -1));
            }
            if a == -b || da - db != 2 {
                continue;
            }
            // a on the higher diagonal: NW means y_a ≤ y_b − 1, SE means y_a ≥ y_b
            if pair_is_nw(&region.j, a, b) {
                cons.push((slot(k, a), slot(k, b), -1));
            } else {
                cons.push((slot(k, b), slot(k, a), 0));
            }
        }
    }
    let y = solve_difference(2 * k, &cons)
        .ok_or_else(|| Error::InconsistentRegion("NW/SE constraints from J form a cycle".into()))?;
    let rows: BTreeMap<i32, i64> = all.iter().map(|&l| (l, y[slot(k, l)])).collect();
    let mut before = BTreeMap::new();
    for r in content.marks() {
        let on: Vec<usize> = (1..=k).filter(|&i| content.c[i - 1] == r).collect();
        let flags: Vec<bool> = on.iter().map(|&i| region.j.contains(&Root::E(i))).collect();
        let n_in = flags.iter().filter(|&&f| f).count();
        if flags.iter().take(n_in).any(|&f| !f) {
            return Err(Error::InconsistentRegion(format!(
                "boxes in J on diagonal {} must precede those in P - J",
                format_half(r)
            )));
        }
        before.insert(r, n_in);
        before.insert(-r, on.len() - n_in);
    }
    let kappa = BoxConfiguration::from_geometry(content.clone(), &rows, &before)?;
    let (z, p, j) = kappa.reconstruct();
    if z != region.z() || p != region.p() || j != region.j {
        return Err(Error::InconsistentRegion(
            "configuration does not reproduce (Z, P, J)".into(),
        ));
    }
    Ok(kappa)
}

/// A standard filling, stored by its values on box_1 … box_k (the values on
/// the negative boxes follow by symmetry). This is the window of w_S.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct StandardFilling {
    pub values: Vec<i32>,
}

impl StandardFilling {
    pub fn value(&self, label: i32) -> i32 {
        let v = self.values[label.unsigned_abs() as usize - 1];
        if label < 0 {
            -v
        } else {
            v
        }
    }

    fn to_w(&self) -> SignedPermutation {
        SignedPermutation::new(self.values.clone()).expect("fillings are bijective")
    }
}

/// Every standard filling of κ, sorted.
pub fn standard_fillings(kappa: &BoxConfiguration) -> Vec<StandardFilling> {
    standard_fillings_with(kappa, Exec::default())
}

struct FillSearch {
    k: usize,
    preds: Vec<Vec<usize>>,
    forced_pos: Vec<bool>,
}

impl FillSearch {
    fn new(kappa: &BoxConfiguration) -> Self {
        let k = kappa.k();
        let mut preds = vec![Vec::new(); 2 * k];
        for (a, b) in kappa.order_edges() {
            preds[slot(k, b)].push(slot(k, a));
        }
        let forced_pos = labels(k)
            .map(|l| kappa.forced_sign(l) == Some(false))
            .collect();
        FillSearch {
            k,
            preds,
            forced_pos,
        }
    }

    fn mirror(&self, s: usize) -> usize {
        2 * self.k - 1 - s
    }

    /// Boxes that may take the next (smallest remaining) negative value.
    fn candidates(&self, vals: &[i32]) -> Vec<usize> {
        (0..2 * self.k)
            .filter(|&s| {
                vals[s] == 0 && !self.forced_pos[s] && self.preds[s].iter().all(|&p| vals[p] < 0)
            })
            .collect()
    }

    /// Assigns −k, −k+1, …, −1 in turn, each together with its mirror.
    fn run(&self, vals: &mut Vec<i32>, next: i32, out: &mut Vec<StandardFilling>) {
        if next == 0 {
            let values = (0..self.k).map(|i| vals[self.k + i]).collect();
            out.push(StandardFilling { values });
            return;
        }
        for s in self.candidates(vals) {
            let m = self.mirror(s);
            vals[s] = next;
            vals[m] = -next;
            self.run(vals, next + 1, out);
            vals[s] = 0;
            vals[m] = 0;
        }
    }
}

pub fn standard_fillings_with(kappa: &BoxConfiguration, exec: Exec) -> Vec<StandardFilling> {
    let search = FillSearch::new(kappa);
    let k = kappa.k();
    if k == 0 {
        return vec![StandardFilling { values: vec![] }];
    }
    let start = vec![0i32; 2 * k];
    let first = search.candidates(&start);
    let mut out = par::flat_map(exec, first, |s| {
        let mut vals = start.clone();
        let m = search.mirror(s);
        vals[s] = -(k as i32);
        vals[m] = k as i32;
        let mut found = Vec::new();
        search.run(&mut vals, -(k as i32) + 1, &mut found);
        found
    });
    out.sort();
    out
}

/// S_w(box_i) = w(i), defined for w ∈ F^{(c,J)}.
pub fn filling_from_w(kappa: &BoxConfiguration, w: &SignedPermutation) -> Result<StandardFilling> {
    let region = kappa.region();
    if !in_region(&region, w) {
        return Err(Error::NotInRegion(w.to_string()));
    }
    Ok(StandardFilling {
        values: w.window().to_vec(),
    })
}

/// w(i) = S(box_i), defined for standard fillings S.
pub fn w_from_filling(kappa: &BoxConfiguration, s: &StandardFilling) -> Result<SignedPermutation> {
    if !kappa.is_standard(s) {
        return Err(Error::NotInRegion(format!(
            "{:?} is not a standard filling",
            s.values
        )));
    }
    Ok(s.to_w())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cv(c: &[i64], r1: i64, r2: i64) -> ContentVector {
        ContentVector::new(c.to_vec(), Some(r1), Some(r2)).unwrap()
    }

    fn roots(s: &str) -> BTreeSet<Root> {
        weyl::parse_roots(s).unwrap()
    }

    fn sp(w: &[i32]) -> SignedPermutation {
        SignedPermutation::new(w.to_vec()).unwrap()
    }

    fn example_31() -> ContentVector {
        cv(&[4, 4, 6], 2, 6)
    }

    #[test]
    fn half_text() {
        assert_eq!(format_half(3), "3/2");
        assert_eq!(format_half(-4), "-2");
        assert_eq!(parse_half("-3/2").unwrap(), -3);
        assert_eq!(parse_half("5").unwrap(), 10);
        assert!(parse_half("1/3").is_err());
        assert_eq!(parse_half_list("1/2, 3/2,2").unwrap(), vec![1, 3, 4]);
    }

    #[test]
    fn content_validation() {
        assert!(ContentVector::new(vec![1, 2], None, None).is_err());
        assert!(ContentVector::new(vec![1, 3], Some(3), Some(-3)).is_err());
        assert!(ContentVector::new(vec![2], Some(0), None).is_err());
        let c = ContentVector::new(vec![-3, 1], Some(3), None).unwrap();
        assert_eq!(c.canonical().c, vec![1, 3]);
    }

    #[test]
    fn z_and_p_examples() {
        let c = example_31();
        assert_eq!(z_set(&c), roots("e2-e1"));
        assert_eq!(p_set(&c), roots("e3, e3-e1, e3-e2"));
        assert!(z_set(&cv(&[2, 4], 2, 4)).is_empty());
        assert_eq!(z_set(&cv(&[0, 0], 2, 4)), roots("e1,e2,e2-e1,e2+e1"));
        assert!(p_set(&cv(&[10, 18], 2, 4)).is_empty());
    }

    #[test]
    fn p_of_twelve_box_example() {
        let c = cv(&[1, 1, 3, 3, 5, 9, 11, 13, 13, 15, 15, 17], 3, 15);
        let expected = roots(
            "e3, e4, e10, e11, e2+e1, e3-e1, e4-e1, e3-e2, e4-e2, e5-e3, e5-e4, e7-e6, e8-e7, e9-e7, \
             e10-e8, e11-e8, e10-e9, e11-e9, e12-e10, e12-e11",
        );
        assert_eq!(expected.len(), 20);
        assert_eq!(p_set(&c), expected);
    }

    #[test]
    fn region_rejects_j_outside_p() {
        let err = LocalRegion::new(example_31(), roots("e2")).unwrap_err();
        assert_eq!(err.to_string(), "J not subset of P(c): e2");
    }

    #[test]
    fn regular_region_is_whole_group() {
        let r = LocalRegion::new(cv(&[10, 18], 2, 4), BTreeSet::new()).unwrap();
        assert_eq!(standard_tableaux(&r).unwrap().len(), 8);
        assert_eq!(region_members(&r).unwrap().len(), 8);
    }

    #[test]
    fn rank_two_chambers_split_by_two_walls() {
        // c = (r1 - 1, r1) with r1 = 5/2: the walls of e2 and e2-e1 cut the
        // eight chambers into sectors of 1, 3, 1 and 3 chambers
        let c = cv(&[3, 5], 5, 15);
        assert_eq!(p_set(&c), roots("e2, e2-e1"));
        let mut seen = BTreeSet::new();
        let mut sizes = Vec::new();
        for r in LocalRegion::all_for(&c) {
            let f = standard_tableaux(&r).unwrap();
            sizes.push(f.len());
            seen.extend(f);
        }
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 3, 3]);
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn regions_partition_the_z_free_chambers() {
        for c in [vec![0, 2, 4], vec![2, 2, 4], vec![1, 1, 3], vec![1, 3, 5]] {
            let content = cv(&c, 2, 6);
            let z = z_set(&content);
            let free: BTreeSet<_> = weyl::enumerate_group(3)
                .unwrap()
                .filter(|w| inversion_set(w).is_disjoint(&z))
                .collect();
            let mut union = BTreeSet::new();
            for r in LocalRegion::all_for(&content) {
                for w in standard_tableaux(&r).unwrap() {
                    assert!(union.insert(w), "chamber in two regions");
                }
            }
            assert_eq!(union, free);
        }
    }

    #[test]
    fn skew_examples() {
        let r = LocalRegion::new(
            ContentVector::new(vec![0, 2], Some(3), None).unwrap(),
            BTreeSet::new(),
        )
        .unwrap();
        assert!(!is_skew(&r).unwrap());
        assert_eq!(
            skew_violation(&r.content.c, &SignedPermutation::identity(2)).unwrap(),
            "(wc)_1 = 0"
        );
        let regular = LocalRegion::new(cv(&[10, 18], 2, 4), BTreeSet::new()).unwrap();
        assert!(is_skew(&regular).unwrap());
    }

    #[test]
    fn example_31_configurations() {
        let c = example_31();
        let k1 = configuration(&LocalRegion::new(c.clone(), roots("e3-e2")).unwrap()).unwrap();
        assert!(k1.nw.contains(&(3, 2)));
        assert!(k1.nw.contains(&(1, 3)));
        assert_eq!(
            k1.get(3).row + 1,
            k1.get(2).row,
            "box 3 directly north of box 2"
        );
        assert!(k1.markings.contains(&Marking {
            diagonal: 6,
            before: 0
        }));
        assert!(k1.markings.contains(&Marking {
            diagonal: -6,
            before: 1
        }));
        let k2 = configuration(&LocalRegion::new(c, roots("e3, e3-e1, e3-e2")).unwrap()).unwrap();
        assert!(k2.nw.contains(&(3, 2)) && k2.nw.contains(&(3, 1)));
        assert!(k2.markings.contains(&Marking {
            diagonal: 6,
            before: 1
        }));
        assert_ne!(k1, k2);
    }

    #[test]
    fn example_31_fillings() {
        let kappa =
            configuration(&LocalRegion::new(example_31(), roots("e3-e2")).unwrap()).unwrap();
        let fills: BTreeSet<Vec<i32>> = standard_fillings(&kappa)
            .into_iter()
            .map(|s| s.values)
            .collect();
        for w in [[1, 3, 2], [-1, 3, 2], [-2, 3, 1]] {
            assert!(fills.contains(&w[..]), "{w:?}");
        }
        assert!(!fills.contains(&vec![-3, 1, -2]));
        assert!(
            !kappa.is_standard(&StandardFilling {
                values: vec![1, 2, 3]
            }),
            "identity filling"
        );
    }

    #[test]
    fn free_single_box() {
        let r = LocalRegion::new(
            ContentVector::new(vec![10], Some(2), Some(4)).unwrap(),
            BTreeSet::new(),
        )
        .unwrap();
        let kappa = configuration(&r).unwrap();
        assert!(kappa.nw.is_empty());
        assert_eq!(kappa.get(1).diagonal, 10);
        assert_eq!(kappa.get(-1).diagonal, -10);
        assert_eq!(standard_fillings(&kappa).len(), 2);
    }

    #[test]
    fn half_half_configurations_have_two_fillings() {
        let c = cv(&[1, 1], 3, 15);
        let mut count = 0;
        for r in LocalRegion::all_for(&c) {
            if let Ok(kappa) = configuration(&r) {
                let n = standard_fillings(&kappa).len();
                if n > 0 {
                    assert_eq!(n, 2, "{:?}", r.j);
                    count += 1;
                }
            }
        }
        assert_eq!(count, 2);
    }

    #[test]
    fn inconsistent_marking_is_rejected() {
        // two boxes on the marked diagonal, J holding only the later one
        let c = cv(&[3, 3], 3, 15);
        let r = LocalRegion::new(c, roots("e2")).unwrap();
        assert!(matches!(
            configuration(&r),
            Err(Error::InconsistentRegion(_))
        ));
    }

    fn small_contents() -> Vec<ContentVector> {
        let mut out = Vec::new();
        for k in 1..=3usize {
            for parity in 0..2i64 {
                let vals: Vec<i64> = (0..4).map(|x| 2 * x + parity).collect();
                let mut stack = vec![vec![]];
                while let Some(v) = stack.pop() {
                    if v.len() == k {
                        out.push(cv(&v, 2 + parity, 6 + parity));
                        continue;
                    }
                    for &x in &vals {
                        if v.last().is_none_or(|&l| l <= x) {
                            let mut n = v.clone();
                            n.push(x);
                            stack.push(n);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn filling_bijection_small() {
        for c in small_contents() {
            for r in LocalRegion::all_for(&c) {
                let brute = standard_tableaux(&r).unwrap();
                match configuration(&r) {
                    Ok(kappa) => {
                        let fills = standard_fillings(&kappa);
                        assert_eq!(fills.len(), brute.len(), "{} J={:?}", c.to_text(), r.j);
                        for s in &fills {
                            assert!(kappa.is_standard(s));
                            let w = w_from_filling(&kappa, s).unwrap();
                            assert_eq!(&filling_from_w(&kappa, &w).unwrap(), s);
                        }
                        let via: Vec<_> = fills.iter().map(StandardFilling::to_w).collect();
                        assert_eq!(via, brute);
                        assert_eq!(kappa.reconstruct(), (r.z(), r.p(), r.j.clone()));
                    }
                    Err(_) => assert!(brute.is_empty(), "{} J={:?}", c.to_text(), r.j),
                }
            }
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let r = LocalRegion::new(cv(&[1, 3, 5], 3, 15), roots("e2-e1")).unwrap();
        assert_eq!(
            standard_tableaux_with(&r, Exec::Sequential).unwrap(),
            standard_tableaux_with(&r, Exec::Parallel).unwrap()
        );
        let kappa = configuration(&r).unwrap();
        assert_eq!(
            standard_fillings_with(&kappa, Exec::Sequential),
            standard_fillings_with(&kappa, Exec::Parallel)
        );
    }

    #[test]
    fn not_in_region_is_reported() {
        let kappa =
            configuration(&LocalRegion::new(example_31(), roots("e3-e2")).unwrap()).unwrap();
        assert!(matches!(
            filling_from_w(&kappa, &sp(&[-3, 1, -2])),
            Err(Error::NotInRegion(_))
        ));
    }

    #[test]
    fn region_json_shape() {
        let r = LocalRegion::new(example_31(), roots("e3-e2")).unwrap();
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(
            j,
            serde_json::json!({"c": [4, 4, 6], "r1": 2, "r2": 6, "J": ["e3-e2"]})
        );
        let back: LocalRegion = serde_json::from_value(j).unwrap();
        assert_eq!(back, r);
        let bad = serde_json::json!({"c": [4, 4, 6], "r1": 2, "r2": 6, "J": ["e2"]});
        assert!(serde_json::from_value::<LocalRegion>(bad).is_err());
    }

    #[test]
    fn renderings_mention_every_box() {
        let kappa =
            configuration(&LocalRegion::new(example_31(), roots("e3-e2")).unwrap()).unwrap();
        let text = kappa.render_ascii();
        for l in ["-3", "-2", "-1", "1", "2", "3"] {
            assert!(text.contains(l));
        }
        let dot = kappa.render_dot();
        assert!(dot.starts_with("digraph") && dot.contains("\"b3\" -> \"b2\""));
    }

    proptest! {
        #[test]
        fn filling_roundtrip(ci in 0usize..64, pick in 0usize..48) {
            let all = small_contents();
            let c = &all[ci % all.len()];
            let k = c.k();
            let w = weyl::enumerate_group(k).unwrap().nth(pick % weyl::group_order(k) as usize).unwrap();
            let z = z_set(c);
            prop_assume!(inversion_set(&w).is_disjoint(&z));
            let p = p_set(c);
            let j = inversion_set(&w).intersection(&p).copied().collect();
            let r = LocalRegion::new(c.clone(), j).unwrap();
            let kappa = configuration(&r).unwrap();
            let s = filling_from_w(&kappa, &w).unwrap();
            prop_assert!(kappa.is_standard(&s));
            prop_assert_eq!(w_from_filling(&kappa, &s).unwrap(), w);
        }
    }
}
