//! Integer partitions, contents, hooks and the gl_n dimension.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition, stored as its nonzero parts in weakly decreasing order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl Partition {
    /// Trailing zeros are dropped; the parts must be weakly decreasing.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The rectangle (width^height).
    pub fn rectangle(width: usize, height: usize) -> Self {
        if width == 0 {
            return Partition::empty();
        }
        Partition {
            parts: vec![width; height],
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Length of row `r` (0-based), zero past the last row.
    pub fn part(&self, r: usize) -> usize {
        self.parts.get(r).copied().unwrap_or(0)
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.rows() <= self.rows() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// Boxes as 1-based (row, column), row by row.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (1..=len).map(move |col| (r + 1, col)))
    }

    /// Boxes of self/inner, row by row. The caller ensures inner ⊆ self.
    pub fn skew_boxes(&self, inner: &Partition) -> Vec<(usize, usize)> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (inner.part(r) + 1..=len).map(move |col| (r + 1, col)))
            .collect()
    }

    pub fn content_sum(&self) -> i64 {
        self.boxes().map(|(r, c)| content(r, c)).sum()
    }

    /// 0-based rows where a box can be added.
    pub fn addable_rows(&self) -> Vec<usize> {
        (0..=self.rows())
            .filter(|&r| r == 0 || self.part(r) < self.part(r - 1))
            .collect()
    }

    /// 0-based rows whose last box can be removed.
    pub fn removable_rows(&self) -> Vec<usize> {
        (0..self.rows())
            .filter(|&r| self.part(r) > self.part(r + 1))
            .collect()
    }

    /// Adds a box at the end of row `r`, if the result is a partition.
    pub fn add_box(&self, r: usize) -> Option<Partition> {
        if r > self.rows() || (r > 0 && self.part(r) >= self.part(r - 1)) {
            return None;
        }
        let mut parts = self.parts.clone();
        if r == parts.len() {
            parts.push(1);
        } else {
            parts[r] += 1;
        }
        Some(Partition { parts })
    }

    /// Removes the last box of row `r`, if the result is a partition.
    pub fn remove_box(&self, r: usize) -> Option<Partition> {
        if r >= self.rows() || self.part(r) <= self.part(r + 1) {
            return None;
        }
        let mut parts = self.parts.clone();
        parts[r] -= 1;
        Partition::new(parts).ok()
    }

    /// Adds a box at 1-based (row, col) when it is an addable corner.
    pub fn add_box_at(&self, (row, col): (usize, usize)) -> Option<Partition> {
        if row == 0 || self.part(row - 1) + 1 != col {
            return None;
        }
        self.add_box(row - 1)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (0..width)
            .map(|c| self.parts.iter().filter(|&&p| p > c).count())
            .collect();
        Partition { parts }
    }

    /// Hook length of the 1-based box (row, col).
    pub fn hook(&self, row: usize, col: usize) -> usize {
        let arm = self.part(row - 1) - col;
        let leg = self.conjugate().part(col - 1) - row;
        arm + leg + 1
    }

    /// Every partition inside the rectangle (width^height), in lexicographic
    /// order of parts.
    pub fn all_in_box(width: usize, height: usize) -> Vec<Partition> {
        fn rec(width: usize, height: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if prefix.len() == height {
                out.push(Partition::new(prefix.clone()).expect("built decreasing"));
                return;
            }
            let cap = prefix.last().copied().unwrap_or(width);
            for x in 0..=cap {
                prefix.push(x);
                rec(width, height, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(width, height, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    pub fn to_text(&self) -> String {
        let p: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        format!("({})", p.join(","))
    }
}

/// c(box) = column − row.
pub fn content(row: usize, col: usize) -> i64 {
    col as i64 - row as i64
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Partition {
    type Err = Error;
    /// Accepts "9,9,6", "(9,9,6)", "()" or "0".
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| {
                x.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("partition part {x:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// Dimension of the irreducible gl_n-module of highest weight λ, by the
/// hook-content formula Π (n + c(box)) / hook(box).
pub fn dim_gl(lambda: &Partition, n: usize) -> Result<BigInt> {
    if lambda.rows() > n {
        return Err(Error::TooManyRows {
            rows: lambda.rows(),
            n,
        });
    }
    let conj = lambda.conjugate();
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for (r, c) in lambda.boxes() {
        num *= BigInt::from(n as i64 + content(r, c));
        let hook = lambda.part(r - 1) - c + conj.part(c - 1) - r + 1;
        den *= BigInt::from(hook);
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// All μ + □ with labels c(μ+□ / μ); with a bound, only partitions with at
/// most that many rows.
pub fn add_box_expansion(mu: &Partition, n_bound: Option<usize>) -> Vec<(Partition, i64)> {
    mu.addable_rows()
        .into_iter()
        .filter(|&r| n_bound.is_none_or(|n| r < n))
        .map(|r| {
            (
                mu.add_box(r).expect("addable"),
                content(r + 1, mu.part(r) + 1),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    /// Semistandard tableaux of shape λ with entries ≤ n, counted by filling
    /// boxes row by row.
    fn ssyt_count(lambda: &Partition, n: usize) -> u64 {
        let boxes: Vec<(usize, usize)> = lambda.boxes().collect();
        fn rec(i: usize, boxes: &[(usize, usize)], n: usize, filled: &mut Vec<Vec<usize>>) -> u64 {
            if i == boxes.len() {
                return 1;
            }
            let (r, c) = boxes[i];
            let mut lo = 1;
            if c > 1 {
                lo = lo.max(filled[r - 1][c - 2]);
            }
            if r > 1 {
                lo = lo.max(filled[r - 2][c - 1] + 1);
            }
            let mut total = 0;
            for v in lo..=n {
                filled[r - 1].push(v);
                total += rec(i + 1, boxes, n, filled);
                filled[r - 1].pop();
            }
            total
        }
        rec(0, &boxes, n, &mut vec![Vec::new(); lambda.rows()])
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!("9,9,6".parse::<Partition>().unwrap(), p(&[9, 9, 6]));
        assert_eq!("(3,1,0)".parse::<Partition>().unwrap().to_string(), "(3,1)");
        assert_eq!("()".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
    }

    #[test]
    fn dim_gl_examples() {
        assert_eq!(dim_gl(&p(&[1]), 6).unwrap(), BigInt::from(6));
        assert_eq!(dim_gl(&p(&[1, 1]), 4).unwrap(), BigInt::from(6));
        assert_eq!(dim_gl(&p(&[2, 1]), 3).unwrap(), BigInt::from(8));
        assert_eq!(
            dim_gl(&p(&[1, 1, 1]), 2),
            Err(Error::TooManyRows { rows: 3, n: 2 })
        );
    }

    #[test]
    fn dim_gl_matches_tableau_count() {
        // every partition with at most 6 boxes, n up to 4
        for size in 0..=6usize {
            for lam in Partition::all_in_box(size, size)
                .into_iter()
                .filter(|l| l.size() == size)
            {
                for n in lam.rows().max(1)..=4 {
                    assert_eq!(
                        dim_gl(&lam, n).unwrap(),
                        BigInt::from(ssyt_count(&lam, n)),
                        "{lam} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn add_box_examples() {
        assert_eq!(
            add_box_expansion(&Partition::empty(), None),
            vec![(p(&[1]), 0)]
        );
        assert_eq!(
            add_box_expansion(&p(&[2, 2]), None),
            vec![(p(&[3, 2]), 2), (p(&[2, 2, 1]), -2)]
        );
        assert_eq!(
            add_box_expansion(&p(&[2, 2]), Some(2)),
            vec![(p(&[3, 2]), 2)]
        );
    }

    #[test]
    fn boxes_in_a_rectangle() {
        // C(4, 2) partitions fit in (2^2)
        assert_eq!(Partition::all_in_box(2, 2).len(), 6);
        assert_eq!(Partition::all_in_box(3, 1).len(), 4);
    }

    proptest! {
        #[test]
        fn add_then_remove(parts in proptest::collection::vec(0usize..6, 0..5)) {
            let mut parts = parts;
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let lam = Partition::new(parts).unwrap();
            for (mu, c) in add_box_expansion(&lam, None) {
                prop_assert_eq!(mu.size(), lam.size() + 1);
                prop_assert_eq!(mu.content_sum() - lam.content_sum(), c);
                let back: Vec<Partition> = mu.removable_rows().into_iter().filter_map(|r| mu.remove_box(r)).collect();
                prop_assert!(back.contains(&lam));
            }
            prop_assert_eq!(lam.conjugate().conjugate(), lam.clone());
            prop_assert_eq!(lam.boxes().count(), lam.size());
            prop_assert!(lam.boxes().all(|(r, c)| (1..=lam.size()).contains(&lam.hook(r, c))));
        }
    }
}
