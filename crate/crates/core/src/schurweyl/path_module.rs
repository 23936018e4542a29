//! The module B_k^λ on the path basis {v_S | S ∈ T_k^λ}.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hecke::{FieldParams, Module, Normalization, SMat};
use crate::par::{self, Exec};
use crate::scalar::{Field, Scalar};
use crate::schurweyl::bratteli::{paths_to_lambda, rect_tensor, Path, RectPair};
use crate::schurweyl::mapping::{lambda_to_zcj, path_to_w, SchurWeylRegion};
use crate::schurweyl::partition::Partition;
use crate::weyl::SignedPermutation;

/// B_k^λ with its paths, the elements w_S and the region it realizes.
#[derive(Clone, Debug, Serialize)]
#[serde(bound(serialize = "F: Field + Serialize"))]
pub struct PathModule<F> {
    pub rect: RectPair,
    pub data: SchurWeylRegion,
    pub normalization: Normalization,
    /// Basis order; sorted by the window of w_S.
    pub paths: Vec<Path>,
    pub w: Vec<SignedPermutation>,
    pub module: Module<F>,
}

fn qpow(q: &Scalar, e: i64) -> Result<Scalar> {
    q.pow(e)
}

/// [T_i]_{SS} = (q − q⁻¹)/(1 − q^{2(cᵢ − c_{i+1})}) for consecutive contents.
pub fn t_diagonal(q: &Scalar, ci: i64, cnext: i64) -> Result<Scalar> {
    let num = q - &q.inverse()?;
    let den = &Scalar::one() - &qpow(q, 2 * (ci - cnext))?;
    if den == Scalar::from(0) {
        return Err(Error::UndefinedIntertwiner(format!(
            "equal contents {ci} at consecutive steps"
        )));
    }
    Ok(num / den)
}

/// [Y₁]_{SS} from the content c₁ = c(S⁽¹⁾/S⁽⁰⁾).
pub fn y1_diagonal(p: &RectPair, c1: i64) -> Result<Scalar> {
    let (a, c, b, d) = (p.a as i64, p.c as i64, p.b as i64, p.d as i64);
    let q = &p.q;
    let bsum = &qpow(q, 2 * b)? + &qpow(q, -2 * d)?;
    let asum = &qpow(q, 2 * a)? + &qpow(q, -2 * c)?;
    let num = &bsum - &(&(&asum * &qpow(q, 2 * (b - d))?) * &qpow(q, -2 * c1)?);
    let den = &Scalar::one() - &(&qpow(q, 2 * (a - c + b - d))? * &qpow(q, -4 * c1)?);
    Ok(num / den)
}

/// [X₁]_{SS} from the content c₁ = c(S⁽¹⁾/S⁽⁰⁾).
pub fn x1_diagonal(p: &RectPair, c1: i64) -> Result<Scalar> {
    let (a, c, b, d) = (p.a as i64, p.c as i64, p.b as i64, p.d as i64);
    let q = &p.q;
    let bsum = &qpow(q, 2 * b)? + &qpow(q, -2 * d)?;
    let asum = &qpow(q, 2 * a)? + &qpow(q, -2 * c)?;
    let num = &asum - &(&(&bsum * &qpow(q, 2 * (a - c))?) * &qpow(q, -2 * c1)?);
    let den = &Scalar::one() - &(&qpow(q, 2 * (a - c + b - d))? * &qpow(q, -4 * c1)?);
    Ok(num / den)
}

/// Builds B_k^λ: P and Zᵢ diagonal from e₀ and contents, Tᵢ and Y₁ from the
/// diagonal formulas with off-diagonal entries joining S and s_jS, then
/// T₀ = Y₁/sb and Wᵢ = Zᵢ/(sa·sb).
pub fn build_path_module<F: Field>(
    lambda: &Partition,
    p: &RectPair,
    normalization: Normalization,
) -> Result<PathModule<F>> {
    p.check_generic()?;
    if normalization == Normalization::SymmetricFloat && F::one().try_sqrt().is_none() {
        return Err(Error::Unsupported(
            "the symmetric normalization needs the float backend".into(),
        ));
    }
    let k = p.level_of(lambda)?;
    let data = lambda_to_zcj(lambda, p, k)?;
    let params = p.params()?;
    let fp = FieldParams::<F>::new(&params)?;
    let level0: BTreeSet<Partition> = rect_tensor(p).into_iter().map(|v| v.shape).collect();

    let mut pairs: Vec<(SignedPermutation, Path)> = paths_to_lambda(lambda, p)?
        .into_iter()
        .map(|s| Ok((path_to_w(&s, p)?, s)))
        .collect::<Result<_>>()?;
    pairs.sort();
    let (w, paths): (Vec<SignedPermutation>, Vec<Path>) = pairs.into_iter().unzip();
    let n = paths.len();
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(a, s)| (s, a)).collect();
    let base = w
        .iter()
        .min_by_key(|x| (x.length(), x.window().to_vec()))
        .expect("T_k^λ is nonempty")
        .clone();
    let base_inv = base.inverse();
    let height: Vec<usize> = w
        .iter()
        .map(|x| x.compose(&base_inv).map(|y| y.length()))
        .collect::<Result<_>>()?;
    let contents: Vec<Vec<i64>> = paths.iter().map(Path::contents).collect();

    let q = &p.q;
    let to_f = |s: Scalar| F::from_scalar(&s);
    let pdiag: Vec<F> = paths
        .iter()
        .map(|s| qpow(q, 2 * p.e0(s.s0())).map(to_f))
        .collect::<Result<_>>()?;
    let sasb = fp.sa.clone() * fp.sb.clone();
    let mut wmats = Vec::with_capacity(k);
    for i in 0..k {
        let diag: Vec<F> = contents
            .iter()
            .map(|c| to_f(qpow(q, 2 * c[i])?).checked_div(&sasb))
            .collect::<Result<_>>()?;
        wmats.push(SMat::diag(diag));
    }

    let off = |d: &F, roots: (F, F), up: bool| -> F {
        let prod = -((d.clone() - roots.0) * (d.clone() - roots.1));
        match normalization {
            Normalization::TauBasis if up => F::one(),
            Normalization::TauBasis => prod,
            Normalization::SymmetricFloat => prod.try_sqrt().expect("checked above"),
        }
    };
    let mut tmats = Vec::with_capacity(k);
    for j in 0..k {
        let mut entries = Vec::new();
        for (a, s) in paths.iter().enumerate() {
            let (d, roots) = if j == 0 {
                let d = to_f(y1_diagonal(p, contents[a][0])?);
                (
                    d,
                    (
                        to_f(qpow(q, 2 * p.b as i64)?),
                        to_f(qpow(q, -2 * p.d as i64)?),
                    ),
                )
            } else {
                let d = to_f(t_diagonal(q, contents[a][j - 1], contents[a][j])?);
                (d, (to_f(q.clone()), to_f(-q.inverse()?)))
            };
            entries.push((a, a, d.clone()));
            if let Some(t) = s.s_move(j, &level0) {
                let b = *index.get(&t).ok_or_else(|| {
                    Error::InconsistentPath(format!(
                        "s_{j} of {} is not a path to {lambda}",
                        s.label()
                    ))
                })?;
                entries.push((b, a, off(&d, roots, height[b] > height[a])));
            }
        }
        let m = SMat::from_entries(n, entries);
        // the j = 0 matrix built so far is Y₁
        tmats.push(if j == 0 { m.scale(&fp.sb.inv()?) } else { m });
    }

    let labels = paths.iter().map(Path::label).collect();
    let module = Module::assemble(
        k,
        labels,
        F::from_scalar(&data.z),
        SMat::diag(pdiag),
        wmats,
        tmats,
        &fp,
    )?;
    Ok(PathModule {
        rect: p.clone(),
        data,
        normalization,
        paths,
        w,
        module,
    })
}

/// B_k^λ for every λ at level k, in parallel over λ.
pub fn build_level<F: Field + Send + Sync>(
    p: &RectPair,
    k: usize,
    normalization: Normalization,
    exec: Exec,
) -> Result<Vec<PathModule<F>>> {
    let d = crate::schurweyl::bratteli::bratteli(p, k)?;
    let shapes: Vec<Partition> = d.levels[k].iter().map(|v| v.shape.clone()).collect();
    par::map(exec, shapes, |lam| {
        build_path_module::<F>(&lam, p, normalization)
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::structure::diagonal_candidates;
    use crate::hecke::CalibratedModule;
    use crate::hecke::{build_calibrated, is_irreducible, verify_relations, GenericModule};
    use crate::scalar::ApproxScalar;

    fn rect(a: usize, c: usize, b: usize, d: usize) -> RectPair {
        RectPair::new(a, c, b, d, Scalar::int(2)).unwrap()
    }

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn diagonal_formulas_match_the_calibrated_ones() {
        // Y₁ = sb·T₀ with T₀ given by the weight formula at γ₁ = −q^{2c̃}
        let p = rect(6, 1, 3, 1);
        let params = p.params().unwrap();
        let fp = FieldParams::<Scalar>::new(&params).unwrap();
        for c1 in -6..=9i64 {
            let g = -p.q.pow(2 * c1 - p.shift()).unwrap();
            let t0 = crate::hecke::module::calibrated_diagonal(&fp, std::slice::from_ref(&g), 0)
                .unwrap();
            assert_eq!(y1_diagonal(&p, c1).unwrap(), &params.sb() * &t0);
            let x1 = &(&params.sa() * &g) * &t0_inverse_diag(&fp, &g);
            assert_eq!(x1_diagonal(&p, c1).unwrap(), x1);
        }
    }

    /// [T₀⁻¹]_{SS} on a line: T₀⁻¹ = T₀ − Δt₀.
    fn t0_inverse_diag(fp: &FieldParams<Scalar>, g: &Scalar) -> Scalar {
        let t0 = crate::hecke::module::calibrated_diagonal(fp, std::slice::from_ref(g), 0).unwrap();
        &t0 - &fp.dt0()
    }

    #[test]
    fn path_modules_satisfy_the_relations() {
        let p = rect(6, 1, 3, 1);
        for lam in [
            part(&[7, 3]),
            part(&[6, 4]),
            part(&[6, 3, 1]),
            part(&[8, 3]),
            part(&[7, 4]),
            part(&[7, 3, 1]),
        ] {
            let m: PathModule<Scalar> =
                build_path_module(&lam, &p, Normalization::TauBasis).unwrap();
            let rep = verify_relations(&m.module, &p.params().unwrap()).unwrap();
            assert!(rep.all_pass(), "{lam}: {:?}", rep.failures());
        }
    }

    #[test]
    fn w0_acts_by_z_and_weights_are_shifted_contents() {
        let p = rect(6, 1, 3, 1);
        let lam = part(&[7, 4, 1]);
        let m: PathModule<Scalar> = build_path_module(&lam, &p, Normalization::TauBasis).unwrap();
        assert_eq!(
            m.module.w[0],
            SMat::scalar(m.module.dim(), m.data.z.clone())
        );
        for (a, s) in m.paths.iter().enumerate() {
            for (i, x) in s.shifted2(&p).into_iter().enumerate() {
                assert_eq!(m.module.w[i + 1].get(a, a), -p.q.pow(x).unwrap());
            }
            assert_eq!(
                m.module.x1.get(a, a),
                x1_diagonal(&p, s.contents()[0]).unwrap()
            );
        }
    }

    #[test]
    fn path_module_matches_the_calibrated_module() {
        let p = rect(6, 1, 3, 1);
        for lam in [part(&[7, 4, 1]), part(&[8, 3, 1]), part(&[6, 4, 2])] {
            let m: PathModule<Scalar> =
                build_path_module(&lam, &p, Normalization::TauBasis).unwrap();
            let c: CalibratedModule<Scalar> = build_calibrated(
                &m.data.z,
                &m.data.region,
                &p.params().unwrap(),
                Normalization::TauBasis,
            )
            .unwrap();
            let mut a: Vec<String> = m
                .module
                .diagonal_weights()
                .unwrap()
                .iter()
                .map(|g| format!("{g:?}"))
                .collect();
            let mut b: Vec<String> = c.weights.iter().map(|g| format!("{g:?}")).collect();
            a.sort();
            b.sort();
            assert_eq!(a, b);
            assert!(is_irreducible(&m.module, None).unwrap());
            let gm = GenericModule::new(m.module.clone(), &diagonal_candidates(&m.module).unwrap())
                .unwrap();
            assert!(gm.weight_dims().iter().all(|&d| d == 1));
        }
    }

    #[test]
    fn unique_path_gives_a_line() {
        let p = rect(6, 1, 3, 1);
        let lam = part(&[6, 3, 1, 1]);
        let m: PathModule<Scalar> = build_path_module(&lam, &p, Normalization::TauBasis).unwrap();
        assert_eq!(m.module.dim(), 1);
        assert_eq!(m.module.w[0].get(0, 0), m.data.z);
    }

    #[test]
    fn float_backend_agrees_on_spectra() {
        // a small q keeps the float relation residuals well conditioned
        let p = RectPair::new(6, 1, 3, 1, Scalar::frac(3, 2)).unwrap();
        let lam = part(&[7, 4]);
        let e: PathModule<Scalar> = build_path_module(&lam, &p, Normalization::TauBasis).unwrap();
        let f: PathModule<ApproxScalar> =
            build_path_module(&lam, &p, Normalization::SymmetricFloat).unwrap();
        let rep = verify_relations(&f.module, &p.params().unwrap()).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.failures());
        for (x, y) in e.module.t.iter().zip(&f.module.t) {
            for (u, v) in x.diagonal().iter().zip(y.diagonal()) {
                assert!(u.to_approx().close_tol(&v, 1e-9));
            }
        }
    }

    #[test]
    fn exact_backend_refuses_square_roots() {
        let p = rect(6, 1, 3, 1);
        let e = build_path_module::<Scalar>(&part(&[7, 3]), &p, Normalization::SymmetricFloat)
            .unwrap_err();
        assert!(matches!(e, Error::Unsupported(_)));
    }

    #[test]
    fn sequential_and_parallel_levels_agree() {
        let p = rect(6, 1, 3, 1);
        let a: Vec<PathModule<Scalar>> =
            build_level(&p, 2, Normalization::TauBasis, Exec::Parallel).unwrap();
        let b: Vec<PathModule<Scalar>> =
            build_level(&p, 2, Normalization::TauBasis, Exec::Sequential).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.paths, y.paths);
            assert_eq!(x.module.t, y.module.t);
        }
    }
}
