//! Generalized weight spaces, non-semisimplicity and the cyclic-span
//! irreducibility test.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hecke::laurent::Laurent;
use crate::hecke::matrix::{kernel, rank, rref, SMat};
use crate::hecke::module::Module;
use crate::scalar::Field;

/// Burnside's dimension count is used only up to this module dimension.
const BURNSIDE_MAX_DIM: usize = 24;

/// A generalized weight space M_γ^gen together with its true eigenvectors.
#[derive(Clone, Debug, Serialize)]
#[serde(bound(serialize = "F: Field + Serialize"))]
pub struct WeightSpace<F> {
    pub label: String,
    /// (γ₁, …, γ_k).
    pub weight: Vec<F>,
    /// Basis of the generalized weight space.
    #[serde(skip)]
    pub generalized: Vec<Vec<F>>,
    /// Basis of the joint eigenspace.
    #[serde(skip)]
    pub eigen: Vec<Vec<F>>,
    pub dim: usize,
    pub eigen_dim: usize,
}

impl<F: Field> WeightSpace<F> {
    /// Some Wᵢ has a Jordan block of size > 1 on this space.
    pub fn is_semisimple(&self) -> bool {
        self.dim == self.eigen_dim
    }
}

fn stacked_kernel<F: Field>(blocks: &[Vec<Vec<F>>], n: usize) -> Vec<Vec<F>> {
    let rows: Vec<Vec<F>> = blocks.iter().flat_map(|b| b.iter().cloned()).collect();
    kernel(&rows, n)
}

/// Generalized weight spaces for the candidate weights, dropping the ones
/// that are zero. Fails unless they fill the module.
pub fn weight_spaces<F: Field>(
    m: &Module<F>,
    candidates: &[(String, Vec<F>)],
) -> Result<Vec<WeightSpace<F>>> {
    let n = m.dim();
    let mut out: Vec<WeightSpace<F>> = Vec::new();
    for (label, gamma) in candidates {
        if out
            .iter()
            .any(|s| s.weight.iter().zip(gamma).all(|(a, b)| a.close(b)))
        {
            continue;
        }
        let mut gen_blocks = Vec::new();
        let mut eig_blocks = Vec::new();
        for (i, g) in gamma.iter().enumerate() {
            let shifted = m.w[i + 1].sub(&SMat::scalar(n, g.clone()));
            eig_blocks.push(shifted.to_dense());
            gen_blocks.push(shifted.pow(n as i64)?.to_dense());
        }
        let generalized = stacked_kernel(&gen_blocks, n);
        if generalized.is_empty() {
            continue;
        }
        let eigen = stacked_kernel(&eig_blocks, n);
        out.push(WeightSpace {
            label: label.clone(),
            weight: gamma.clone(),
            dim: generalized.len(),
            eigen_dim: eigen.len(),
            generalized,
            eigen,
        });
    }
    let total: usize = out.iter().map(|s| s.dim).sum();
    if total != n {
        return Err(Error::Unsupported(format!(
            "generalized weight spaces account for {total} of {n} dimensions; candidate list incomplete"
        )));
    }
    Ok(out)
}

/// Candidate weights read off a diagonal W-action.
pub fn diagonal_candidates<F: Field>(m: &Module<F>) -> Option<Vec<(String, Vec<F>)>> {
    let ws = m.diagonal_weights()?;
    Some(
        ws.into_iter()
            .zip(&m.labels)
            .map(|(g, l)| (l.clone(), g))
            .collect(),
    )
}

/// Dimension of the smallest submodule containing v.
pub fn cyclic_span_dim<F: Field>(m: &Module<F>, v: &[F]) -> usize {
    let n = m.dim();
    let gens: Vec<&SMat<F>> = m.generators().into_iter().map(|(_, g)| g).collect();
    let mut basis: Vec<Vec<F>> = Vec::new();
    let mut queue = vec![v.to_vec()];
    while let Some(x) = queue.pop() {
        let mut trial = basis.clone();
        trial.push(x.clone());
        if rank(&trial) == basis.len() {
            continue;
        }
        basis = trial;
        let mut r = basis.clone();
        rref(&mut r);
        basis = r
            .into_iter()
            .filter(|row| row.iter().any(|e| !e.is_zero()))
            .collect();
        if basis.len() == n {
            break;
        }
        for g in &gens {
            queue.push(g.apply(&x));
        }
    }
    basis.len()
}

/// Dimension of the algebra generated by the module's generators.
fn algebra_dim<F: Field>(m: &Module<F>) -> usize {
    let n = m.dim();
    let gens: Vec<&SMat<F>> = m.generators().into_iter().map(|(_, g)| g).collect();
    let flat = |a: &SMat<F>| a.to_dense().into_iter().flatten().collect::<Vec<F>>();
    let mut basis: Vec<Vec<F>> = Vec::new();
    let mut elems: Vec<SMat<F>> = Vec::new();
    let mut queue = vec![SMat::identity(n)];
    while let Some(a) = queue.pop() {
        let mut trial = basis.clone();
        trial.push(flat(&a));
        if rank(&trial) == basis.len() {
            continue;
        }
        basis = trial;
        elems.push(a.clone());
        if basis.len() == n * n {
            break;
        }
        for g in &gens {
            queue.push(g.mul(&a));
        }
    }
    basis.len()
}

/// Irreducibility. Every nonzero submodule contains a joint eigenvector of
/// W₁…W_k, so it suffices that each eigenvector generates the whole module;
/// eigenspaces of dimension > 1 fall back to Burnside's criterion.
pub fn is_irreducible<F: Field>(
    m: &Module<F>,
    candidates: Option<&[(String, Vec<F>)]>,
) -> Result<bool> {
    if !F::EXACT {
        return Err(Error::FloatBackendUnsupported);
    }
    let n = m.dim();
    if n == 0 {
        return Ok(false);
    }
    let own;
    let cands = match candidates {
        Some(c) => c,
        None => {
            own = diagonal_candidates(m).ok_or_else(|| {
                Error::Unsupported("weight candidates needed for a non-diagonal W-action".into())
            })?;
            &own
        }
    };
    let spaces = weight_spaces(m, cands)?;
    let mut ambiguous = false;
    for s in &spaces {
        for v in &s.eigen {
            if cyclic_span_dim(m, v) < n {
                return Ok(false);
            }
        }
        ambiguous |= s.eigen_dim > 1;
    }
    if ambiguous {
        if n > BURNSIDE_MAX_DIM {
            return Err(Error::Unsupported(format!(
                "a joint eigenspace has dimension > 1 and n = {n} is too large for the algebra-span test"
            )));
        }
        return Ok(algebra_dim(m) == n * n);
    }
    Ok(true)
}

/// A module with no preferred weight basis, plus its generalized weight
/// spaces.
#[derive(Clone, Debug, Serialize)]
#[serde(bound(serialize = "F: Field + Serialize"))]
pub struct GenericModule<F> {
    pub module: Module<F>,
    pub weights: Vec<WeightSpace<F>>,
}

impl<F: Field> GenericModule<F> {
    pub fn new(module: Module<F>, candidates: &[(String, Vec<F>)]) -> Result<Self> {
        let weights = weight_spaces(&module, candidates)?;
        Ok(GenericModule { module, weights })
    }

    /// Dimensions of the nonzero generalized weight spaces, sorted.
    pub fn weight_dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.weights.iter().map(|s| s.dim).collect();
        d.sort_unstable();
        d
    }

    pub fn weight_space(&self, label: &str) -> Option<&WeightSpace<F>> {
        self.weights.iter().find(|s| s.label == label)
    }

    /// Every Wᵢ acts semisimply.
    pub fn is_calibrated(&self) -> bool {
        self.weights.iter().all(WeightSpace::is_semisimple)
    }
}

/// Evaluates a W₀-invariant Laurent polynomial on the module and returns
/// the scalar it acts by, or None when the matrix is not scalar.
pub fn central_scalar_check<F: Field>(m: &Module<F>, poly: &Laurent<F>) -> Result<Option<F>> {
    if poly.k() != m.k {
        return Err(Error::SizeMismatch(poly.k(), m.k));
    }
    if !poly.is_invariant() {
        return Err(Error::NotInvariant);
    }
    let a = poly.eval_matrices(&m.w)?;
    let n = m.dim();
    if n == 0 {
        return Ok(Some(F::zero()));
    }
    let s = a.get(0, 0);
    Ok((a == SMat::scalar(n, s.clone())).then_some(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::laurent::parse_laurent;
    use crate::hecke::module::{build_calibrated, CalibratedModule, Normalization};
    use crate::hecke::params::{FieldParams, HeckeParams};
    use crate::regions::{ContentVector, LocalRegion};
    use crate::scalar::{ApproxScalar, Scalar};
    use crate::weyl::Root;

    fn calibrated(c: Vec<i64>, j: &[Root]) -> CalibratedModule<Scalar> {
        let r = LocalRegion::new(
            ContentVector::new(c, None, None).unwrap(),
            j.iter().cloned().collect(),
        )
        .unwrap();
        build_calibrated(
            &Scalar::one(),
            &r,
            &HeckeParams::default(),
            Normalization::TauBasis,
        )
        .unwrap()
    }

    #[test]
    fn calibrated_modules_are_irreducible() {
        for (c, j) in [
            (vec![3], vec![]),
            (vec![3, 9], vec![]),
            (vec![1, 3, 5], vec![Root::minus(1, 2)]),
        ] {
            let m = calibrated(c, &j);
            assert!(is_irreducible(&m.module, None).unwrap());
            let spaces =
                weight_spaces(&m.module, &diagonal_candidates(&m.module).unwrap()).unwrap();
            assert!(spaces.iter().all(|s| s.dim == 1 && s.is_semisimple()));
        }
    }

    #[test]
    fn direct_sum_of_one_dimensionals_is_reducible() {
        // two copies of the same 1-dimensional module (k = 1): T₀ = t₀^{1/2},
        // W₁ = −t^{r₂}
        let p = HeckeParams::default();
        let fp = FieldParams::<Scalar>::new(&p).unwrap();
        let g = p.gamma_r2();
        let m = Module::assemble(
            1,
            vec!["a".into(), "b".into()],
            Scalar::one(),
            SMat::scalar(2, g.inverse().unwrap()),
            vec![SMat::scalar(2, g.clone())],
            vec![SMat::scalar(2, p.t0_half.clone())],
            &fp,
        )
        .unwrap();
        let cands = vec![("r2".to_string(), vec![g])];
        assert!(!is_irreducible(&m, Some(&cands)).unwrap());
    }

    #[test]
    fn float_backend_refused() {
        let r = LocalRegion::new(
            ContentVector::new(vec![3], None, None).unwrap(),
            Default::default(),
        )
        .unwrap();
        let m: CalibratedModule<ApproxScalar> = build_calibrated(
            &Scalar::one(),
            &r,
            &HeckeParams::default(),
            Normalization::SymmetricFloat,
        )
        .unwrap();
        assert_eq!(
            is_irreducible(&m.module, None).unwrap_err(),
            Error::FloatBackendUnsupported
        );
    }

    #[test]
    fn incomplete_candidates_detected() {
        let m = calibrated(vec![3], &[]);
        let one = vec![("x".to_string(), m.weights[0].clone())];
        assert!(weight_spaces(&m.module, &one).is_err());
    }

    #[test]
    fn central_elements_act_by_scalars() {
        let m = calibrated(vec![1, 3, 5], &[Root::minus(2, 3)]);
        let w0: Laurent<Scalar> = parse_laurent(3, "W0").unwrap();
        assert_eq!(
            central_scalar_check(&m.module, &w0).unwrap(),
            Some(Scalar::one())
        );
        // Σ (Wᵢ + Wᵢ⁻¹) acts by Σ (γᵢ + γᵢ⁻¹) computed from one weight
        let sym: Laurent<Scalar> =
            parse_laurent(3, "W1 + W1^-1 + W2 + W2^-1 + W3 + W3^-1").unwrap();
        let g = &m.weights[0];
        let expect = g.iter().fold(Scalar::from(0), |acc, x| {
            acc + x.clone() + x.inverse().unwrap()
        });
        assert_eq!(central_scalar_check(&m.module, &sym).unwrap(), Some(expect));
        // W₁⋯W_k + (W₁⋯W_k)⁻¹ is invariant only for k = 1; s₀ moves it for k > 1
        let prod: Laurent<Scalar> = parse_laurent(3, "W1*W2*W3 + W1^-1*W2^-1*W3^-1").unwrap();
        assert_eq!(
            central_scalar_check(&m.module, &prod).unwrap_err(),
            Error::NotInvariant
        );
        let m1 = calibrated(vec![3], &[]);
        let prod1: Laurent<Scalar> = parse_laurent(1, "W1 + W1^-1").unwrap();
        let g = &m1.weights[0][0];
        assert_eq!(
            central_scalar_check(&m1.module, &prod1).unwrap(),
            Some(g + &g.inverse().unwrap())
        );
        let bad: Laurent<Scalar> = parse_laurent(3, "W1").unwrap();
        assert_eq!(
            central_scalar_check(&m.module, &bad).unwrap_err(),
            Error::NotInvariant
        );
    }
}
