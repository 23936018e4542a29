//! Modules given by generator matrices, and the calibrated modules
//! H_k^{(z,c,J)} built on the standard tableaux of a skew local region.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hecke::matrix::SMat;
use crate::hecke::params::{FieldParams, HeckeParams};
use crate::regions::{self, LocalRegion};
use crate::scalar::{Field, Scalar};
use crate::weyl::{self, Root, SignedPermutation, WeightVector};

/// Matrices for every generator of H_k^ext on a common basis.
#[derive(Clone, Debug, Serialize)]
#[serde(bound(serialize = "F: Field + Serialize"))]
pub struct Module<F> {
    pub k: usize,
    pub labels: Vec<String>,
    pub z: F,
    /// W₀, W₁, …, W_k.
    #[serde(rename = "W")]
    pub w: Vec<SMat<F>>,
    /// T₀, T₁, …, T_{k−1}.
    #[serde(rename = "T")]
    pub t: Vec<SMat<F>>,
    #[serde(rename = "P")]
    pub p: SMat<F>,
    #[serde(rename = "X1")]
    pub x1: SMat<F>,
    #[serde(rename = "Y1")]
    pub y1: SMat<F>,
    /// Z₁, …, Z_k.
    #[serde(rename = "Z")]
    pub zs: Vec<SMat<F>>,
}

impl<F: Field> Module<F> {
    /// Fills in W₀ = PW₁⋯W_k, Y₁ = sb·T₀, X₁ = sa·W₁T₀⁻¹ and Zᵢ = sa·sb·Wᵢ
    /// from P, W₁…W_k and T₀…T_{k−1}.
    pub fn assemble(
        k: usize,
        labels: Vec<String>,
        z: F,
        p: SMat<F>,
        w: Vec<SMat<F>>,
        t: Vec<SMat<F>>,
        fp: &FieldParams<F>,
    ) -> Result<Self> {
        assert_eq!(w.len(), k, "need W_1..W_k");
        assert_eq!(t.len(), k, "need T_0..T_(k-1)");
        let n = labels.len();
        let w0 = w.iter().fold(p.clone(), |acc, wi| acc.mul(wi));
        let y1 = t[0].scale(&fp.sb);
        let x1 = w[0].mul(&t[0].inverse()?).scale(&fp.sa);
        let zs = w
            .iter()
            .map(|wi| wi.scale(&(fp.sa.clone() * fp.sb.clone())))
            .collect();
        let mut all_w = vec![w0];
        all_w.extend(w);
        debug_assert!(all_w.iter().all(|m| m.dim() == n));
        Ok(Module {
            k,
            labels,
            z,
            w: all_w,
            t,
            p,
            x1,
            y1,
            zs,
        })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// All generators with names, in a fixed order.
    pub fn generators(&self) -> Vec<(String, &SMat<F>)> {
        let mut g = Vec::new();
        for (i, m) in self.t.iter().enumerate() {
            g.push((format!("T{i}"), m));
        }
        for (i, m) in self.w.iter().enumerate() {
            g.push((format!("W{i}"), m));
        }
        g.push(("P".into(), &self.p));
        g
    }

    /// True when W₁, …, W_k are all diagonal in this basis.
    pub fn is_calibrated_basis(&self) -> bool {
        self.w.iter().all(SMat::is_diagonal)
    }

    /// The joint W₁…W_k eigenvalues on each basis vector, when diagonal.
    pub fn diagonal_weights(&self) -> Option<Vec<Vec<F>>> {
        if !self.is_calibrated_basis() {
            return None;
        }
        let diags: Vec<Vec<F>> = self.w[1..].iter().map(SMat::diagonal).collect();
        Some(
            (0..self.dim())
                .map(|a| diags.iter().map(|d| d[a].clone()).collect())
                .collect(),
        )
    }
}

/// Off-diagonal normalization of the calibrated T-action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// Basis {τ_{w·w₀⁻¹}v_{w₀}}: entries stay in the base field.
    TauBasis,
    /// Equal off-diagonal entries, each a square root; needs a field with
    /// square roots.
    SymmetricFloat,
}

/// H_k^{(z,c,J)} on the basis {v_w : w ∈ F^{(c,J)}}.
#[derive(Clone, Debug, Serialize)]
#[serde(bound(serialize = "F: Field + Serialize"))]
pub struct CalibratedModule<F> {
    pub region: LocalRegion,
    pub basis: Vec<SignedPermutation>,
    pub normalization: Normalization,
    /// The basis element w₀ of minimal length.
    pub base: SignedPermutation,
    /// (γ₁, …, γ_k) on each basis vector.
    #[serde(skip)]
    pub weights: Vec<Vec<F>>,
    pub module: Module<F>,
}

/// Z(γ) and P(γ) computed from the weight values and the parameters
/// (rather than from contents).
pub fn z_p_of_gamma(gamma: &[Scalar], params: &HeckeParams) -> Result<(Vec<Root>, Vec<Root>)> {
    let k = gamma.len();
    let one = Scalar::one();
    let t = params.t();
    let t_inv = t.inverse()?;
    let bvals = params.boundary_values()?;
    let (mut z, mut p) = (Vec::new(), Vec::new());
    for j in 1..=k {
        let g = &gamma[j - 1];
        if *g == one || *g == -one.clone() {
            z.push(Root::E(j));
        }
        if bvals.contains(g) {
            p.push(Root::E(j));
        }
        for i in 1..j {
            let (gi, gj) = (&gamma[i - 1], g);
            if gi == gj {
                z.push(Root::Minus(i, j));
            }
            if gj == &gi.inverse()? {
                z.push(Root::Plus(i, j));
            }
            if *gj == gi * &t || *gj == gi * &t_inv {
                p.push(Root::Minus(i, j));
            }
            let prod = gi * gj;
            if prod == t || prod == t_inv {
                p.push(Root::Plus(i, j));
            }
        }
    }
    z.sort();
    p.sort();
    Ok((z, p))
}

/// The weight (γ₁, …, γ_k) of v_w: γ_i = −t^{(wc)_i}.
pub fn weight_of(c: &[i64], w: &SignedPermutation, params: &HeckeParams) -> Result<Vec<Scalar>> {
    let wc = weyl::act_on_weight(w, &WeightVector::new(c.to_vec()))?;
    wc.c.iter().map(|&x| params.gamma(x)).collect()
}

/// The minimal-length element of a set of signed permutations, ties going
/// to the lexicographically smallest window.
pub fn minimal_element(ws: &[SignedPermutation]) -> Option<SignedPermutation> {
    ws.iter()
        .min_by(|a, b| {
            a.length()
                .cmp(&b.length())
                .then_with(|| a.window().cmp(b.window()))
        })
        .cloned()
}

/// Builds H_k^{(z,c,J)} for a skew local region.
pub fn build_calibrated<F: Field>(
    z: &Scalar,
    region: &LocalRegion,
    params: &HeckeParams,
    normalization: Normalization,
) -> Result<CalibratedModule<F>> {
    params.check_generic()?;
    if normalization == Normalization::SymmetricFloat && F::one().try_sqrt().is_none() {
        return Err(Error::Unsupported(
            "the symmetric normalization needs the float backend".into(),
        ));
    }
    if !regions::is_skew(region)? {
        return Err(Error::NotSkew);
    }
    let k = region.k();
    let c = &region.content.c;
    let basis = regions::region_members(region)?;
    let exact_weights: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|w| weight_of(c, w, params))
        .collect::<Result<_>>()?;
    // the markings carried by c must be the ones the parameters produce
    let (_, p_gamma) = z_p_of_gamma(&exact_weights[0], params)?;
    let wc0 = weyl::act_on_weight(&basis[0], &WeightVector::new(c.clone()))?;
    let shifted = regions::ContentVector {
        c: wc0.c,
        ..region.content.clone()
    };
    let p_content: Vec<Root> = regions::p_set(&shifted).into_iter().collect();
    if p_gamma != p_content {
        return Err(Error::InconsistentRegion(format!(
            "the markings of c do not match the parameters: P from c is {p_content:?}, P from the parameters is {p_gamma:?}"
        )));
    }

    let fp = FieldParams::<F>::new(params)?;
    let n = basis.len();
    let index: HashMap<&SignedPermutation, usize> =
        basis.iter().enumerate().map(|(a, w)| (w, a)).collect();
    let weights: Vec<Vec<F>> = exact_weights
        .iter()
        .map(|g| g.iter().map(F::from_scalar).collect())
        .collect();
    let base = minimal_element(&basis).expect("skew regions are nonempty");
    let base_inv = base.inverse();
    let height: Vec<usize> = basis
        .iter()
        .map(|w| w.compose(&base_inv).map(|x| x.length()))
        .collect::<Result<_>>()?;

    let wmats: Vec<SMat<F>> = (0..k)
        .map(|i| SMat::diag(weights.iter().map(|g| g[i].clone()).collect()))
        .collect();
    let zf = F::from_scalar(z);
    let pdiag: Vec<F> = weights
        .iter()
        .map(|g| {
            g.iter()
                .try_fold(zf.clone(), |acc, x| Ok::<F, Error>(acc * x.inv()?))
        })
        .collect::<Result<_>>()?;

    let mut tmats = Vec::with_capacity(k);
    for i in 0..k {
        let (hi, lo) = fp.quadratic_roots(i);
        let mut entries = Vec::new();
        for (a, w) in basis.iter().enumerate() {
            let d = calibrated_diagonal(&fp, &weights[a], i)?;
            entries.push((a, a, d.clone()));
            let u = w.left_mul_gen(i);
            if let Some(&b) = index.get(&u) {
                let prod = -((d.clone() - hi.clone()) * (d - lo.clone()));
                let value = match normalization {
                    Normalization::TauBasis if height[b] > height[a] => F::one(),
                    Normalization::TauBasis => prod,
                    Normalization::SymmetricFloat => prod.try_sqrt().expect("checked above"),
                };
                // column a holds the image of v_w, so the entry sits at (u, w)
                entries.push((b, a, value));
            }
        }
        tmats.push(SMat::from_entries(n, entries));
    }

    let labels = basis.iter().map(|w| w.to_string()).collect();
    let module = Module::assemble(k, labels, zf, SMat::diag(pdiag), wmats, tmats, &fp)?;
    Ok(CalibratedModule {
        region: region.clone(),
        basis,
        normalization,
        base,
        weights,
        module,
    })
}

/// [T_i]_{ww} on a vector of weight γ: (t^{1/2}−t^{−1/2})/(1−γ_i/γ_{i+1})
/// for i ≥ 1 and ((t₀^{1/2}−t₀^{−1/2}) + (t_k^{1/2}−t_k^{−1/2})γ₁⁻¹)/(1−γ₁⁻²)
/// for i = 0.
pub fn calibrated_diagonal<F: Field>(fp: &FieldParams<F>, gamma: &[F], i: usize) -> Result<F> {
    let undefined =
        |why: &str| Error::UndefinedIntertwiner(format!("[T{i}] on weight {gamma:?}: {why}"));
    if i == 0 {
        let gi = gamma[0].inv()?;
        let den = F::one() - gi.clone() * gi.clone();
        if den.is_zero() {
            return Err(undefined("gamma_1 = ±1"));
        }
        (fp.dt0() + fp.dtk() * gi).checked_div(&den)
    } else {
        let den = F::one() - gamma[i - 1].clone() * gamma[i].inv()?;
        if den.is_zero() {
            return Err(undefined("gamma_i = gamma_(i+1)"));
        }
        fp.dt().checked_div(&den)
    }
}
