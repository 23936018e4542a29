//! The hyperoctahedral group W₀ of signed permutations of {±1,…,±k}.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default cap on k for brute-force enumeration of W₀.
pub const DEFAULT_MAX_K: usize = 8;
/// Default cap on k for exhaustive bijection suites.
pub const DEFAULT_SUITE_K: usize = 3;

fn env_bound() -> Option<usize> {
    std::env::var("HECKE2B_MAX_K")
        .ok()
        .and_then(|v| v.trim().parse().ok())
}

/// Bound on k for `enumerate_group`; overridable by `HECKE2B_MAX_K`.
pub fn max_k() -> usize {
    env_bound().unwrap_or(DEFAULT_MAX_K)
}

/// Bound on k for exhaustive suites; `HECKE2B_MAX_K` caps it as well.
pub fn suite_k() -> usize {
    env_bound().map_or(DEFAULT_SUITE_K, |b| b.min(DEFAULT_SUITE_K))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    window: Vec<i32>,
}

impl SignedPermutation {
    pub fn new(window: Vec<i32>) -> Result<Self> {
        let k = window.len();
        let mut seen = vec![false; k + 1];
        for &x in &window {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > k || seen[a] {
                return Err(Error::InvalidPermutation(format!("{window:?}")));
            }
            seen[a] = true;
        }
        Ok(SignedPermutation { window })
    }

    pub fn identity(k: usize) -> Self {
        SignedPermutation {
            window: (1..=k as i32).collect(),
        }
    }

    /// s₀ negates position 1, sᵢ swaps positions i and i+1.
    pub fn generator(k: usize, i: usize) -> Self {
        assert!(i < k.max(1), "generator index {i} out of range for k={k}");
        let mut w = Self::identity(k);
        if i == 0 {
            w.window[0] = -1;
        } else {
            w.window.swap(i - 1, i);
        }
        w
    }

    pub fn k(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    /// w(i) for i ∈ {±1,…,±k}.
    pub fn apply(&self, i: i32) -> i32 {
        let v = self.window[i.unsigned_abs() as usize - 1];
        if i < 0 {
            -v
        } else {
            v
        }
    }

    pub fn compose(&self, w: &Self) -> Result<Self> {
        if self.k() != w.k() {
            return Err(Error::SizeMismatch(self.k(), w.k()));
        }
        Ok(SignedPermutation {
            window: w.window.iter().map(|&x| self.apply(x)).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.k()];
        for (pos, &x) in self.window.iter().enumerate() {
            let p = pos as i32 + 1;
            inv[x.unsigned_abs() as usize - 1] = if x > 0 { p } else { -p };
        }
        SignedPermutation { window: inv }
    }

    /// sᵢ·w (left multiplication).
    pub fn left_mul_gen(&self, i: usize) -> Self {
        Self::generator(self.k(), i).compose(self).expect("same k")
    }

    /// w·sᵢ (right multiplication).
    pub fn right_mul_gen(&self, i: usize) -> Self {
        let mut w = self.clone();
        if i == 0 {
            w.window[0] = -w.window[0];
        } else {
            w.window.swap(i - 1, i);
        }
        w
    }

    pub fn is_identity(&self) -> bool {
        self.window
            .iter()
            .enumerate()
            .all(|(p, &x)| x == p as i32 + 1)
    }

    /// Length via the inversion set.
    pub fn length(&self) -> usize {
        inversion_set(self).len()
    }

    /// Reduced word (s_{i₁}⋯s_{i_ℓ} = w) found by stripping right descents:
    /// w·s₀ is shorter iff w(1) < 0, w·sᵢ is shorter iff w(i) > w(i+1).
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        'outer: loop {
            for i in 0..w.k() {
                let descent = if i == 0 {
                    w.window[0] < 0
                } else {
                    w.window[i - 1] > w.window[i]
                };
                if descent {
                    w = w.right_mul_gen(i);
                    word.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        word.reverse();
        word
    }

    pub fn from_word(k: usize, word: &[usize]) -> Self {
        word.iter()
            .fold(Self::identity(k), |acc, &i| acc.right_mul_gen(i))
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.window.iter().join(","))
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for SignedPermutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.window.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignedPermutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Vec::<i32>::deserialize(d)?;
        SignedPermutation::new(w).map_err(serde::de::Error::custom)
    }
}

pub fn generators(k: usize) -> Vec<SignedPermutation> {
    (0..k).map(|i| SignedPermutation::generator(k, i)).collect()
}

/// Positive roots ε_i, ε_j−ε_i, ε_j+ε_i (0 < i < j). Ordered by (kind, i, j).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Root {
    E(usize),
    Minus(usize, usize),
    Plus(usize, usize),
}

impl Root {
    pub fn minus(i: usize, j: usize) -> Self {
        assert!(0 < i && i < j);
        Root::Minus(i, j)
    }

    pub fn plus(i: usize, j: usize) -> Self {
        assert!(0 < i && i < j);
        Root::Plus(i, j)
    }

    /// Coefficient vector in the ε basis.
    pub fn vector(&self, k: usize) -> Vec<i32> {
        let mut v = vec![0; k];
        match *self {
            Root::E(i) => v[i - 1] = 1,
            Root::Minus(i, j) => {
                v[j - 1] = 1;
                v[i - 1] = -1;
            }
            Root::Plus(i, j) => {
                v[j - 1] = 1;
                v[i - 1] = 1;
            }
        }
        v
    }

    pub fn max_index(&self) -> usize {
        match *self {
            Root::E(i) => i,
            Root::Minus(_, j) | Root::Plus(_, j) => j,
        }
    }

    pub fn positive_roots(k: usize) -> Vec<Root> {
        let mut out: Vec<Root> = (1..=k).map(Root::E).collect();
        for j in 1..=k {
            for i in 1..j {
                out.push(Root::Minus(i, j));
            }
        }
        for j in 1..=k {
            for i in 1..j {
                out.push(Root::Plus(i, j));
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Root::E(i) => write!(f, "e{i}"),
            Root::Minus(i, j) => write!(f, "e{j}-e{i}"),
            Root::Plus(i, j) => write!(f, "e{j}+e{i}"),
        }
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Root {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Parse(format!("bad root '{s}' (expected ei, ej-ei or ej+ei)"));
        let idx = |p: &str| -> Result<usize> {
            let n: usize = p
                .trim()
                .strip_prefix('e')
                .ok_or_else(bad)?
                .parse()
                .map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            Ok(n)
        };
        if let Some((a, b)) = t.split_once('-') {
            let (j, i) = (idx(a)?, idx(b)?);
            if i >= j {
                return Err(bad());
            }
            return Ok(Root::Minus(i, j));
        }
        if let Some((a, b)) = t.split_once('+') {
            let (j, i) = (idx(a)?, idx(b)?);
            if i >= j {
                return Err(bad());
            }
            return Ok(Root::Plus(i, j));
        }
        Ok(Root::E(idx(t)?))
    }
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Root {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn parse_roots(s: &str) -> Result<BTreeSet<Root>> {
    s.split([',', ';'])
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(str::parse)
        .collect()
}

/// R(w) by the explicit case description.
pub fn inversion_set(w: &SignedPermutation) -> BTreeSet<Root> {
    let k = w.k() as i32;
    let mut out = BTreeSet::new();
    for i in 1..=k {
        if w.apply(i) < 0 {
            out.insert(Root::E(i as usize));
        }
        for j in i + 1..=k {
            let (wi, wj) = (w.apply(i), w.apply(j));
            if wi > wj {
                out.insert(Root::Minus(i as usize, j as usize));
            }
            if -wi > wj {
                out.insert(Root::Plus(i as usize, j as usize));
            }
        }
    }
    out
}

/// A weight (z; c₁,…,c_k) with the cᵢ stored doubled.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WeightVector {
    pub z: Option<Scalar>,
    pub c: Vec<i64>,
}

impl WeightVector {
    pub fn new(c: Vec<i64>) -> Self {
        WeightVector { z: None, c }
    }

    /// Entry c_i for i ∈ {±1,…,±k}, using c_{−i} = −c_i.
    pub fn signed(&self, i: i32) -> i64 {
        let v = self.c[i.unsigned_abs() as usize - 1];
        if i < 0 {
            -v
        } else {
            v
        }
    }
}

/// (wc)_i = c_{w⁻¹(i)}; z is untouched.
pub fn act_on_weight(w: &SignedPermutation, v: &WeightVector) -> Result<WeightVector> {
    if w.k() != v.c.len() {
        return Err(Error::SizeMismatch(w.k(), v.c.len()));
    }
    let winv = w.inverse();
    let c = (1..=w.k() as i32)
        .map(|i| v.signed(winv.apply(i)))
        .collect();
    Ok(WeightVector { z: v.z.clone(), c })
}

/// All of W₀ for a given k, each element once: permutations in lexicographic
/// order, and for each the 2^k sign patterns.
pub fn enumerate_group(k: usize) -> Result<impl Iterator<Item = SignedPermutation>> {
    let bound = max_k();
    if k > bound {
        return Err(Error::BoundExceeded { k, bound });
    }
    Ok(permutations(k)
        .into_iter()
        .flat_map(move |p| signings(p, k)))
}

pub(crate) fn permutations(k: usize) -> Vec<Vec<i32>> {
    (1..=k as i32).permutations(k).collect()
}

pub(crate) fn signings(p: Vec<i32>, k: usize) -> impl Iterator<Item = SignedPermutation> {
    (0u32..1 << k).map(move |mask| {
        let window = p
            .iter()
            .enumerate()
            .map(|(pos, &x)| if mask >> pos & 1 == 1 { -x } else { x })
            .collect();
        SignedPermutation { window }
    })
}

pub fn group_order(k: usize) -> u128 {
    (1..=k as u128).product::<u128>() << k
}

/// Minimal-length w with w·c = target and R(w) ∩ Z(c) = ∅, where c is sorted
/// with nonnegative entries (all doubled). Within a block of equal |c| the
/// signed images are assigned in increasing order.
pub fn min_coset_rep(c: &[i64], target: &[i64]) -> Result<SignedPermutation> {
    let k = c.len();
    if target.len() != k {
        return Err(Error::SizeMismatch(k, target.len()));
    }
    if c.windows(2).any(|p| p[0] > p[1]) || c.first().is_some_and(|&x| x < 0) {
        return Err(Error::InvalidContent(
            "c must be sorted and nonnegative".into(),
        ));
    }
    let mut window = vec![0i32; k];
    let mut pos = 0;
    while pos < k {
        let v = c[pos];
        let end = (pos..k).find(|&q| c[q] != v).unwrap_or(k);
        // target slot j receives c_{w^{-1}(j)}: w(i) = j if target_j = c_i, −j if target_j = −c_i
        let mut images: Vec<i32> = Vec::new();
        for (j, &tv) in target.iter().enumerate() {
            let jj = j as i32 + 1;
            if v == 0 {
                if tv == 0 {
                    images.push(jj);
                }
            } else if tv == v {
                images.push(jj);
            } else if tv == -v {
                images.push(-jj);
            }
        }
        if images.len() != end - pos {
            return Err(Error::InvalidContent(format!(
                "target {target:?} is not in the W0-orbit of {c:?}"
            )));
        }
        images.sort();
        for (slot, img) in (pos..end).zip(images) {
            window[slot] = img;
        }
        pos = end;
    }
    SignedPermutation::new(window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sp(w: &[i32]) -> SignedPermutation {
        SignedPermutation::new(w.to_vec()).unwrap()
    }

    /// R(w) from the definition {α > 0 : wα < 0}.
    fn brute_inversions(w: &SignedPermutation) -> BTreeSet<Root> {
        let k = w.k();
        Root::positive_roots(k)
            .into_iter()
            .filter(|r| {
                let v = r.vector(k);
                let mut img = vec![0; k];
                for (i, &a) in v.iter().enumerate() {
                    if a != 0 {
                        let t = w.apply(i as i32 + 1);
                        img[t.unsigned_abs() as usize - 1] += a * t.signum();
                    }
                }
                let top = img.iter().rposition(|&x| x != 0).unwrap();
                img[top] < 0
            })
            .collect()
    }

    #[test]
    fn generator_examples() {
        assert_eq!(SignedPermutation::generator(2, 0).window(), &[-1, 2]);
        assert_eq!(SignedPermutation::generator(2, 1).window(), &[2, 1]);
        assert_eq!(SignedPermutation::generator(3, 2).window(), &[1, 3, 2]);
        assert_eq!(generators(3).len(), 3);
    }

    #[test]
    fn compose_examples() {
        let s0 = SignedPermutation::generator(2, 0);
        let s1 = SignedPermutation::generator(2, 1);
        assert!(s0.compose(&s0).unwrap().is_identity());
        assert_eq!(s1.compose(&s0).unwrap().window(), &[-2, 1]);
        let u = sp(&[-2, 1]);
        assert_eq!(u.inverse().window(), &[2, -1]);
        assert!(u.compose(&u.inverse()).unwrap().is_identity());
        assert_eq!(
            s0.compose(&SignedPermutation::identity(3)),
            Err(Error::SizeMismatch(2, 3))
        );
    }

    #[test]
    fn inversion_examples() {
        assert!(inversion_set(&SignedPermutation::identity(4)).is_empty());
        let s0 = SignedPermutation::generator(2, 0);
        assert_eq!(inversion_set(&s0), BTreeSet::from([Root::E(1)]));
        assert_eq!(brute_inversions(&s0), BTreeSet::from([Root::E(1)]));
    }

    #[test]
    fn inversion_formula_matches_definition() {
        for k in 1..=4 {
            for w in enumerate_group(k).unwrap() {
                assert_eq!(inversion_set(&w), brute_inversions(&w), "{w}");
            }
        }
    }

    #[test]
    fn group_sizes_and_uniqueness() {
        assert_eq!(enumerate_group(1).unwrap().count(), 2);
        assert_eq!(enumerate_group(2).unwrap().count(), 8);
        assert_eq!(enumerate_group(3).unwrap().count(), 48);
        for k in 1..=4 {
            let all: BTreeSet<_> = enumerate_group(k).unwrap().collect();
            assert_eq!(all.len() as u128, group_order(k));
            // R(w) determines w
            let sets: BTreeSet<_> = all.iter().map(inversion_set).collect();
            assert_eq!(sets.len(), all.len());
        }
    }

    #[test]
    fn length_equals_descent_length() {
        for k in 1..=4 {
            for w in enumerate_group(k).unwrap() {
                let word = w.reduced_word();
                assert_eq!(word.len(), inversion_set(&w).len(), "{w}");
                assert_eq!(SignedPermutation::from_word(k, &word), w);
            }
        }
    }

    #[test]
    fn weight_action_examples() {
        let v = WeightVector::new(vec![3, 5]);
        assert_eq!(
            act_on_weight(&SignedPermutation::identity(2), &v).unwrap(),
            v
        );
        let s0 = SignedPermutation::generator(2, 0);
        let s1 = SignedPermutation::generator(2, 1);
        assert_eq!(act_on_weight(&s0, &v).unwrap().c, vec![-3, 5]);
        assert_eq!(act_on_weight(&s1, &v).unwrap().c, vec![5, 3]);
    }

    #[test]
    fn root_text_roundtrip() {
        for r in Root::positive_roots(4) {
            assert_eq!(r.to_string().parse::<Root>().unwrap(), r);
        }
        assert!("e2-e3".parse::<Root>().is_err());
        assert_eq!(parse_roots("e3, e3-e1;e3-e2").unwrap().len(), 3);
    }

    #[test]
    fn bound_is_enforced() {
        if std::env::var("HECKE2B_MAX_K").is_err() {
            assert!(matches!(
                enumerate_group(9),
                Err(Error::BoundExceeded { k: 9, bound: 8 })
            ));
        }
    }

    #[test]
    fn coset_rep_is_minimal() {
        let c = vec![1, 1, 3];
        for w in enumerate_group(3).unwrap() {
            let target = act_on_weight(&w, &WeightVector::new(c.clone())).unwrap().c;
            let u = min_coset_rep(&c, &target).unwrap();
            assert_eq!(
                act_on_weight(&u, &WeightVector::new(c.clone())).unwrap().c,
                target
            );
            assert!(u.length() <= w.length());
        }
    }

    fn arb_perm(k: usize) -> impl Strategy<Value = SignedPermutation> {
        (
            Just(k),
            proptest::sample::select(
                (0..(1usize << k) * (1..=k).product::<usize>()).collect::<Vec<_>>(),
            ),
        )
            .prop_map(|(k, n)| enumerate_group(k).unwrap().nth(n).unwrap())
    }

    proptest! {
        #[test]
        fn action_is_group_action(u in arb_perm(4), w in arb_perm(4),
                                  c in proptest::collection::vec(-9i64..9, 4)) {
            let v = WeightVector::new(c);
            let lhs = act_on_weight(&u, &act_on_weight(&w, &v).unwrap()).unwrap();
            let rhs = act_on_weight(&u.compose(&w).unwrap(), &v).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inverse_is_two_sided(w in arb_perm(5)) {
            prop_assert!(w.compose(&w.inverse()).unwrap().is_identity());
            prop_assert!(w.inverse().compose(&w).unwrap().is_identity());
        }
    }
}
