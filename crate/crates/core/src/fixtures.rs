//! Deterministic sets of skew local regions used by the regression suites,
//! the benchmarks and the command-line `--fixture` option.

use crate::error::Result;
use crate::hecke::HeckeParams;
use crate::regions::{self, ContentVector, LocalRegion};
use crate::scalar::Scalar;

/// Doubled markings of the marked fixture family: r1 = 3/2, r2 = 15/2.
pub const MARKED_R1: i64 = 3;
pub const MARKED_R2: i64 = 15;

/// A region together with the parameters it is built against.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub params: HeckeParams,
    pub region: LocalRegion,
}

/// Nondecreasing content vectors of length k with doubled entries drawn
/// from `values`.
fn contents(k: usize, values: &[i64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut stack = vec![Vec::new()];
    while let Some(v) = stack.pop() {
        if v.len() == k {
            out.push(v);
            continue;
        }
        for &x in values.iter().rev() {
            if v.last().is_none_or(|&l: &i64| l <= x) {
                let mut n = v.clone();
                n.push(x);
                stack.push(n);
            }
        }
    }
    out.sort();
    out
}

/// Every skew region (c, J) with k in `ks`, entries of c from `values`
/// and the given markings.
pub fn skew_regions(
    ks: &[usize],
    values: &[i64],
    r1: Option<i64>,
    r2: Option<i64>,
) -> Result<Vec<LocalRegion>> {
    let mut out = Vec::new();
    for &k in ks {
        for c in contents(k, values) {
            let content = ContentVector::new(c, r1, r2)?;
            for r in LocalRegion::all_for(&content) {
                if regions::is_skew(&r)? {
                    out.push(r);
                }
            }
        }
    }
    Ok(out)
}

/// The unmarked parameters t^{1/2} = 2, t₀^{1/2} = 3, t_k^{1/2} = 5.
pub fn unmarked_params() -> HeckeParams {
    HeckeParams::default()
}

/// t^{1/2} = 2 with markings at 3/2 and 15/2.
pub fn marked_params() -> HeckeParams {
    HeckeParams::marked(Scalar::int(2), MARKED_R1, MARKED_R2).expect("r1 + r2 is even")
}

fn region_name(r: &LocalRegion) -> String {
    let j: Vec<String> = r.j.iter().map(ToString::to_string).collect();
    format!("{} J={{{}}}", r.content.to_text(), j.join(","))
}

/// The unmarked family: integer contents in {0,…,3} and half-integer
/// contents in {1/2,…,7/2}, every J, skew regions only.
pub fn unmarked(max_k: usize) -> Result<Vec<Fixture>> {
    let ks: Vec<usize> = (1..=max_k).collect();
    let mut out = Vec::new();
    for values in [[0, 2, 4, 6], [1, 3, 5, 7]] {
        for region in skew_regions(&ks, &values, None, None)? {
            out.push(Fixture {
                name: region_name(&region),
                params: unmarked_params(),
                region,
            });
        }
    }
    Ok(out)
}

/// The marked family: half-integer contents in {1/2,…,15/2} that touch the
/// markings, skew regions only.
pub fn marked(max_k: usize) -> Result<Vec<Fixture>> {
    let ks: Vec<usize> = (1..=max_k).collect();
    let values = [1, 3, 5, 13, 15];
    let regions = skew_regions(&ks, &values, Some(MARKED_R1), Some(MARKED_R2))?;
    Ok(regions
        .into_iter()
        .map(|region| Fixture {
            name: region_name(&region),
            params: marked_params(),
            region,
        })
        .collect())
}

/// Both families.
pub fn all(max_k: usize) -> Result<Vec<Fixture>> {
    let mut out = unmarked(max_k)?;
    out.extend(marked(max_k)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_are_nonempty_and_skew() {
        let u = unmarked(3).unwrap();
        let m = marked(3).unwrap();
        for k in 1..=3 {
            assert!(u.iter().any(|f| f.region.k() == k), "unmarked k = {k}");
            assert!(m.iter().any(|f| f.region.k() == k), "marked k = {k}");
        }
        assert!(u.len() >= 20);
        assert!(m.iter().all(|f| regions::is_skew(&f.region).unwrap()));
    }

    #[test]
    fn contents_are_sorted_multisets() {
        let c = contents(2, &[0, 2]);
        assert_eq!(c, vec![vec![0, 0], vec![0, 2], vec![2, 2]]);
    }
}
