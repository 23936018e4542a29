//! Evaluation of the defining relations of H_k^ext as matrix identities.

use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::hecke::matrix::SMat;
use crate::hecke::module::Module;
use crate::hecke::params::{FieldParams, HeckeParams};
use crate::par::{self, Exec};
use crate::scalar::{Field, FLOAT_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    PassExact,
    PassFloat,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::PassExact => "PASS exact",
            Status::PassFloat => "PASS float",
            Status::Fail => "FAIL",
        }
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Outcome of one relation (all its index instances together).
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub status: Status,
    /// Largest entry of lhs − rhs (relative to the operands for floats).
    #[serde(rename = "max-residual")]
    pub max_residual: f64,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Compares matrix pairs, exactly for exact fields and to a relative
/// tolerance otherwise.
pub fn compare<F: Field>(relation: &str, pairs: &[(SMat<F>, SMat<F>)]) -> RelationCheck {
    let mut worst = 0.0f64;
    let mut ok = true;
    for (lhs, rhs) in pairs {
        let diff = lhs.sub(rhs);
        if F::EXACT {
            ok &= diff.is_zero();
            worst = worst.max(diff.max_abs());
        } else {
            let scale = lhs.max_abs().max(rhs.max_abs()).max(1.0);
            let r = diff.max_abs() / scale;
            ok &= r <= FLOAT_TOL;
            worst = worst.max(r);
        }
    }
    let status = match (ok, F::EXACT) {
        (false, _) => Status::Fail,
        (true, true) => Status::PassExact,
        (true, false) => Status::PassFloat,
    };
    RelationCheck {
        relation: relation.to_string(),
        status,
        max_residual: worst,
    }
}

fn failed(relation: &str) -> RelationCheck {
    RelationCheck {
        relation: relation.to_string(),
        status: Status::Fail,
        max_residual: f64::INFINITY,
    }
}

/// Every defining relation, plus the identities tying X₁, Y₁, Zᵢ and P to
/// the W, T generators.
#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(RelationCheck::passed)
    }

    pub fn failures(&self) -> Vec<&RelationCheck> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }

    pub fn get(&self, relation: &str) -> Option<&RelationCheck> {
        self.checks.iter().find(|c| c.relation == relation)
    }
}

/// The relation names checked for a given k.
pub fn relation_names(k: usize) -> Vec<&'static str> {
    let mut v = vec![];
    if k >= 2 {
        v.push("B1 T0T1T0T1=T1T0T1T0");
    }
    if k >= 3 {
        v.push("B1 TiTi+1Ti=Ti+1TiTi+1");
        v.push("B1 TiTj=TjTi (|i-j|>1)");
    }
    v.extend([
        "B1 W0 central",
        "B2 WiWj=WjWi",
        "B3 T0Wj=WjT0 (j>=2)",
        "B4 TiWj=WjTi (j!=i,i+1)",
        "H T0",
        "H Ti",
        "C1",
        "C2",
        "W0=PW1...Wk",
        "H X1",
        "H Y1",
        "Y1=b1^1/2(-b2)^1/2 T0",
        "X1=a1^1/2(-a2)^1/2 W1 T0^-1",
        "Z1=X1Y1",
        "Zi=-(a1a2b1b2)^1/2 Wi",
        "Zi+1=TiZiTi",
    ]);
    if k < 2 {
        v.retain(|r| {
            !r.starts_with("B4")
                && !r.starts_with("H Ti")
                && !r.starts_with("C1")
                && *r != "Zi+1=TiZiTi"
        });
    }
    v
}

fn commute<F: Field>(a: &SMat<F>, b: &SMat<F>) -> (SMat<F>, SMat<F>) {
    (a.mul(b), b.mul(a))
}

fn pairs_for<F: Field>(
    name: &str,
    m: &Module<F>,
    fp: &FieldParams<F>,
) -> Result<Vec<(SMat<F>, SMat<F>)>> {
    let k = m.k;
    let n = m.dim();
    let zero = SMat::zeros(n);
    let id = SMat::identity(n);
    let (t, w) = (&m.t, &m.w);
    let quad = |x: &SMat<F>, r1: F, r2: F| {
        x.sub(&SMat::scalar(n, r1))
            .mul(&x.sub(&SMat::scalar(n, r2)))
    };
    let mut out = Vec::new();
    match name {
        "B1 T0T1T0T1=T1T0T1T0" => {
            out.push((
                SMat::product(n, &[&t[0], &t[1], &t[0], &t[1]]),
                SMat::product(n, &[&t[1], &t[0], &t[1], &t[0]]),
            ));
        }
        "B1 TiTi+1Ti=Ti+1TiTi+1" => {
            for i in 1..k - 1 {
                out.push((
                    SMat::product(n, &[&t[i], &t[i + 1], &t[i]]),
                    SMat::product(n, &[&t[i + 1], &t[i], &t[i + 1]]),
                ));
            }
        }
        "B1 TiTj=TjTi (|i-j|>1)" => {
            for i in 0..k {
                for j in i + 2..k {
                    out.push(commute(&t[i], &t[j]));
                }
            }
        }
        "B1 W0 central" => {
            for (_, g) in m.generators() {
                out.push(commute(&w[0], g));
            }
        }
        "B2 WiWj=WjWi" => {
            for i in 1..=k {
                for j in i + 1..=k {
                    out.push(commute(&w[i], &w[j]));
                }
            }
        }
        "B3 T0Wj=WjT0 (j>=2)" => {
            for wj in w.iter().skip(2) {
                out.push(commute(&t[0], wj));
            }
        }
        "B4 TiWj=WjTi (j!=i,i+1)" => {
            for i in 1..k {
                for j in (1..=k).filter(|&j| j != i && j != i + 1) {
                    out.push(commute(&t[i], &w[j]));
                }
            }
        }
        "H T0" => out.push((
            quad(&t[0], fp.t0_half.clone(), -fp.t0_half_inv.clone()),
            zero.clone(),
        )),
        "H Ti" => {
            for ti in t.iter().skip(1) {
                out.push((
                    quad(ti, fp.t_half.clone(), -fp.t_half_inv.clone()),
                    zero.clone(),
                ));
            }
        }
        "C1" => {
            let dt = fp.dt();
            for i in 1..k {
                // TᵢWᵢ − W_{i+1}Tᵢ = −(t^{1/2}−t^{−1/2})W_{i+1}
                out.push((
                    t[i].mul(&w[i]).sub(&w[i + 1].mul(&t[i])),
                    w[i + 1].scale(&-dt.clone()),
                ));
                // TᵢW_{i+1} − WᵢTᵢ = (t^{1/2}−t^{−1/2})W_{i+1}
                out.push((
                    t[i].mul(&w[i + 1]).sub(&w[i].mul(&t[i])),
                    w[i + 1].scale(&dt),
                ));
            }
        }
        "C2" => {
            let w1inv = w[1].inverse()?;
            let lhs = t[0].mul(&w[1]).sub(&w1inv.mul(&t[0]));
            let rhs = w[1].scale(&fp.dt0()).add(&id.scale(&fp.dtk()));
            out.push((lhs, rhs));
        }
        "W0=PW1...Wk" => {
            let prod = w[1..].iter().fold(m.p.clone(), |acc, wi| acc.mul(wi));
            out.push((w[0].clone(), prod));
            out.push((w[0].clone(), SMat::scalar(n, m.z.clone())));
        }
        "H X1" => out.push((quad(&m.x1, fp.a1.clone(), fp.a2.clone()), zero.clone())),
        "H Y1" => out.push((quad(&m.y1, fp.b1.clone(), fp.b2.clone()), zero.clone())),
        "Y1=b1^1/2(-b2)^1/2 T0" => out.push((m.y1.clone(), t[0].scale(&fp.sb))),
        "X1=a1^1/2(-a2)^1/2 W1 T0^-1" => {
            out.push((m.x1.mul(&t[0]), w[1].scale(&fp.sa)));
        }
        "Z1=X1Y1" => out.push((m.zs[0].clone(), m.x1.mul(&m.y1))),
        "Zi=-(a1a2b1b2)^1/2 Wi" => {
            let s = fp.sa.clone() * fp.sb.clone();
            for i in 1..=k {
                out.push((m.zs[i - 1].clone(), w[i].scale(&s)));
            }
        }
        "Zi+1=TiZiTi" => {
            for i in 1..k {
                out.push((
                    m.zs[i].clone(),
                    SMat::product(n, &[&t[i], &m.zs[i - 1], &t[i]]),
                ));
            }
        }
        other => unreachable!("unknown relation {other}"),
    }
    Ok(out)
}

/// Checks every relation, in parallel across relations.
pub fn verify_relations<F: Field>(m: &Module<F>, params: &HeckeParams) -> Result<RelationReport> {
    verify_relations_with(m, params, Exec::default())
}

pub fn verify_relations_with<F: Field>(
    m: &Module<F>,
    params: &HeckeParams,
    exec: Exec,
) -> Result<RelationReport> {
    let fp = FieldParams::<F>::new(params)?;
    let names = relation_names(m.k);
    let checks = par::map(exec, names, |name| match pairs_for(name, m, &fp) {
        Ok(pairs) => compare(name, &pairs),
        Err(_) => failed(name),
    });
    Ok(RelationReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::module::{build_calibrated, CalibratedModule, Normalization};
    use crate::regions::{ContentVector, LocalRegion};
    use crate::scalar::{ApproxScalar, Scalar};
    use crate::weyl::Root;

    fn module(c: Vec<i64>, j: &[Root]) -> CalibratedModule<Scalar> {
        let r = LocalRegion::new(
            ContentVector::new(c, None, None).unwrap(),
            j.iter().cloned().collect(),
        )
        .unwrap();
        build_calibrated(
            &Scalar::int(7),
            &r,
            &HeckeParams::default(),
            Normalization::TauBasis,
        )
        .unwrap()
    }

    #[test]
    fn small_modules_pass_exactly() {
        for (c, j) in [
            (vec![3], vec![]),
            (vec![3, 9], vec![]),
            (vec![1, 3], vec![Root::minus(1, 2)]),
            (vec![1, 3, 5], vec![Root::minus(1, 2)]),
        ] {
            let m = module(c.clone(), &j);
            let rep = verify_relations(&m.module, &HeckeParams::default()).unwrap();
            assert!(rep.all_pass(), "{c:?} {j:?}: {:?}", rep.failures());
            assert!(rep
                .checks
                .iter()
                .all(|x| x.status == Status::PassExact && x.max_residual == 0.0));
        }
    }

    #[test]
    fn perturbed_t1_breaks_quadratic() {
        let mut m = module(vec![3, 9], &[]).module;
        let v = m.t[1].get(0, 0);
        m.t[1].set(0, 0, v + Scalar::one());
        let rep = verify_relations(&m, &HeckeParams::default()).unwrap();
        assert_eq!(rep.get("H Ti").unwrap().status, Status::Fail);
        assert!(rep.get("H T0").unwrap().passed());
    }

    #[test]
    fn w0_is_central_and_equals_z() {
        let m = module(vec![3, 9], &[]);
        let rep = verify_relations(&m.module, &HeckeParams::default()).unwrap();
        assert!(rep.get("B1 W0 central").unwrap().passed());
        assert_eq!(m.module.w[0], SMat::scalar(m.module.dim(), Scalar::int(7)));
    }

    #[test]
    fn float_backend_within_tolerance() {
        let r = LocalRegion::new(
            ContentVector::new(vec![3, 9], None, None).unwrap(),
            Default::default(),
        )
        .unwrap();
        let m: CalibratedModule<ApproxScalar> = build_calibrated(
            &Scalar::int(7),
            &r,
            &HeckeParams::default(),
            Normalization::SymmetricFloat,
        )
        .unwrap();
        let rep = verify_relations(&m.module, &HeckeParams::default()).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.failures());
        assert!(rep.checks.iter().all(|x| x.status == Status::PassFloat));
    }

    #[test]
    fn sequential_and_parallel_reports_agree() {
        let m = module(vec![1, 3, 5], &[Root::minus(1, 2)]);
        let a = verify_relations_with(&m.module, &HeckeParams::default(), Exec::Parallel).unwrap();
        let b =
            verify_relations_with(&m.module, &HeckeParams::default(), Exec::Sequential).unwrap();
        let names = |r: &RelationReport| {
            r.checks
                .iter()
                .map(|c| (c.relation.clone(), c.status))
                .collect::<Vec<_>>()
        };
        assert_eq!(names(&a), names(&b));
    }
}
