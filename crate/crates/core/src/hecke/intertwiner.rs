//! Intertwining operators τ₀, …, τ_{k−1} and their identities.

use crate::error::{Error, Result};
use crate::hecke::matrix::SMat;
use crate::hecke::module::Module;
use crate::hecke::params::{FieldParams, HeckeParams};
use crate::hecke::relations::{compare, RelationCheck};
use crate::scalar::Field;

/// τ₀ = T₀ − ((t₀^{1/2}−t₀^{−1/2}) + (t_k^{1/2}−t_k^{−1/2})W₁⁻¹)(1−W₁⁻²)⁻¹ and
/// τᵢ = Tᵢ − (t^{1/2}−t^{−1/2})(1−WᵢW_{i+1}⁻¹)⁻¹.
pub fn intertwiner<F: Field>(m: &Module<F>, params: &HeckeParams, i: usize) -> Result<SMat<F>> {
    if i >= m.k {
        return Err(Error::Unsupported(format!("tau_{i} needs i < k = {}", m.k)));
    }
    let fp = FieldParams::<F>::new(params)?;
    let n = m.dim();
    let id = SMat::identity(n);
    let undefined = |why: &str| Error::UndefinedIntertwiner(format!("tau_{i}: {why}"));
    let correction = if i == 0 {
        let w1inv = m.w[1].inverse()?;
        let den = id
            .sub(&w1inv.mul(&w1inv))
            .inverse()
            .map_err(|_| undefined("W1 has eigenvalue ±1"))?;
        id.scale(&fp.dt0()).add(&w1inv.scale(&fp.dtk())).mul(&den)
    } else {
        let ratio = m.w[i].mul(&m.w[i + 1].inverse()?);
        let den = id
            .sub(&ratio)
            .inverse()
            .map_err(|_| undefined("W_i and W_(i+1) share an eigenvalue"))?;
        den.scale(&fp.dt())
    };
    Ok(m.t[i].sub(&correction))
}

/// The scalar by which τᵢ² acts on a weight vector of weight γ, from the
/// factored product formulas.
pub fn tau_square_scalar<F: Field>(fp: &FieldParams<F>, gamma: &[F], i: usize) -> Result<F> {
    let one = F::one();
    if i == 0 {
        let x = gamma[0].inv()?;
        let num = (one.clone() - fp.t0_half.clone() * fp.tk_half.clone() * x.clone())
            * (one.clone() + fp.t0_half.clone() * fp.tk_half_inv.clone() * x.clone())
            * (one.clone() + fp.t0_half_inv.clone() * fp.tk_half.clone() * x.clone())
            * (one.clone() - fp.t0_half_inv.clone() * fp.tk_half_inv.clone() * x.clone());
        let a = one.clone() - x.clone();
        let b = one + x;
        num.checked_div(&(a.clone() * a * b.clone() * b))
    } else {
        let y = gamma[i - 1].inv()? * gamma[i].clone();
        let yinv = y.inv()?;
        let num = (fp.t_half.clone() - fp.t_half_inv.clone() * y.clone())
            * (fp.t_half.clone() - fp.t_half_inv.clone() * yinv.clone());
        num.checked_div(&((one.clone() - y) * (one - yinv)))
    }
}

/// τᵢ² against the scalar formula on every weight vector of a calibrated
/// module (W's diagonal).
pub fn tau_square_check<F: Field>(
    m: &Module<F>,
    params: &HeckeParams,
) -> Result<Vec<RelationCheck>> {
    let weights = m
        .diagonal_weights()
        .ok_or_else(|| Error::Unsupported("tau-square check needs a weight basis".into()))?;
    let fp = FieldParams::<F>::new(params)?;
    let mut out = Vec::new();
    for i in 0..m.k {
        let tau = intertwiner(m, params, i)?;
        let sq = tau.mul(&tau);
        let scalars: Vec<F> = weights
            .iter()
            .map(|g| tau_square_scalar(&fp, g, i))
            .collect::<Result<_>>()?;
        let name = if i == 0 {
            "tau0^2".to_string()
        } else {
            format!("tau{i}^2")
        };
        out.push(compare(&name, &[(sq, SMat::diag(scalars))]));
    }
    Ok(out)
}

/// τᵢW^λ = W^{sᵢλ}τᵢ for every λ with entries in [−bound, bound].
pub fn tau_weight_check<F: Field>(
    m: &Module<F>,
    params: &HeckeParams,
    bound: i64,
) -> Result<Vec<RelationCheck>> {
    let k = m.k;
    let n = m.dim();
    // W_j^e for e in [−bound, bound]
    let powers: Vec<Vec<SMat<F>>> = (1..=k)
        .map(|j| {
            (-bound..=bound)
                .map(|e| m.w[j].pow(e))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let mono = |lam: &[i64]| {
        lam.iter()
            .enumerate()
            .fold(SMat::identity(n), |acc, (j, &e)| {
                acc.mul(&powers[j][(e + bound) as usize])
            })
    };
    let mut lambdas: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..k {
        lambdas = lambdas
            .into_iter()
            .flat_map(|l| (-bound..=bound).map(move |e| [l.clone(), vec![e]].concat()))
            .collect();
    }
    let mut out = Vec::new();
    for i in 0..k {
        let tau = intertwiner(m, params, i)?;
        let pairs: Vec<(SMat<F>, SMat<F>)> = lambdas
            .iter()
            .map(|lam| {
                let mut s = lam.clone();
                if i == 0 {
                    s[0] = -s[0];
                } else {
                    s.swap(i - 1, i);
                }
                (tau.mul(&mono(lam)), mono(&s).mul(&tau))
            })
            .collect();
        out.push(compare(
            &format!("tau{i} W^lambda = W^(s{i} lambda) tau{i}"),
            &pairs,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::module::{build_calibrated, CalibratedModule, Normalization};
    use crate::regions::{ContentVector, LocalRegion};
    use crate::scalar::Scalar;
    use crate::weyl::Root;

    fn module(
        c: Vec<i64>,
        j: &[Root],
        p: &HeckeParams,
        r: (Option<i64>, Option<i64>),
    ) -> CalibratedModule<Scalar> {
        let reg = LocalRegion::new(
            ContentVector::new(c, r.0, r.1).unwrap(),
            j.iter().cloned().collect(),
        )
        .unwrap();
        build_calibrated(&Scalar::one(), &reg, p, Normalization::TauBasis).unwrap()
    }

    #[test]
    fn tau_squares_and_weights() {
        let p = HeckeParams::default();
        let m = module(vec![1, 3, 5], &[Root::minus(2, 3)], &p, (None, None));
        for r in tau_square_check(&m.module, &p).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
        for r in tau_weight_check(&m.module, &p, 2).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn tau_kills_vector_on_boundary() {
        // c = (1/2, 3/2) with J = {e2 − e1}: for a w whose s₁w is outside F
        // the weight has γ₁/γ₂ = t^{±1} and τ₁v_w = 0
        let p = HeckeParams::default();
        let m = module(vec![1, 3], &[Root::minus(1, 2)], &p, (None, None));
        let tau = intertwiner(&m.module, &p, 1).unwrap();
        let fp = FieldParams::<Scalar>::new(&p).unwrap();
        let mut seen = false;
        for (a, w) in m.basis.iter().enumerate() {
            if !m.basis.contains(&w.left_mul_gen(1)) {
                seen = true;
                let col: Vec<Scalar> = (0..m.basis.len()).map(|b| tau.get(b, a)).collect();
                assert!(col.iter().all(|x| x == &Scalar::from(0)));
                assert_eq!(
                    tau_square_scalar(&fp, &m.weights[a], 1).unwrap(),
                    Scalar::from(0)
                );
            }
        }
        assert!(seen);
    }

    #[test]
    fn tau0_square_vanishes_at_r2() {
        let p = HeckeParams::default();
        let fp = FieldParams::<Scalar>::new(&p).unwrap();
        let g = p.gamma_r2();
        assert_eq!(tau_square_scalar(&fp, &[g], 0).unwrap(), Scalar::from(0));
        let g1 = p.gamma_r1().unwrap();
        assert_eq!(
            tau_square_scalar(&fp, &[g1.inverse().unwrap()], 0).unwrap(),
            Scalar::from(0)
        );
    }

    #[test]
    fn undefined_intertwiner_reported() {
        // a module whose W₁ has eigenvalue −1
        let p = HeckeParams::default();
        let mut m = module(vec![3], &[], &p, (None, None)).module;
        m.w[1] = SMat::scalar(2, -Scalar::one());
        assert!(matches!(
            intertwiner(&m, &p, 0),
            Err(Error::UndefinedIntertwiner(_))
        ));
    }
}
